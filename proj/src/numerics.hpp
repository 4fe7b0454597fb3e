// Copyright 2026 The dualreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small numerical toolkit shared by the physics modules: adaptive quadrature
// wrappers, cumulative integration and differentiation on nonuniform grids,
// linear least squares, and compensated summation.

#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cstdio>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace dualreg {

struct QuadOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  unsigned max_depth = 30;  // bisections of any one panel
  const char* label = "integral";
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // integral of |f|
};

namespace detail {

struct Panel {
  double a, b, value, error, l1;
  unsigned depth;
};

// One 31-point Kronrod panel. Boost reports the error of the rule on [-1, 1],
// so it is rescaled by the half-width here.
template <class G>
Panel gk_panel(G& g, double a, double b, unsigned depth) {
  double err = 0.0, l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, err * 0.5 * (b - a), l1, depth};
}

// Global adaptive bisection on a finite interval: always split the panel with
// the largest error until the total meets the target. Panels whose error is at
// roundoff or that reached max_depth are frozen.
template <class G>
QuadResult adaptive_gk(G& g, double lo, double hi, const QuadOptions& opt, double rel) {
  constexpr double roundoff = 100.0 * std::numeric_limits<double>::epsilon();
  constexpr std::size_t max_panels = 4000;
  constexpr double tiny = 1e-280;
  const auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::vector<Panel> live{gk_panel(g, lo, hi, 0)};
  double frozen_value = 0.0, frozen_error = 0.0, frozen_l1 = 0.0;
  std::size_t count = 1;
  const auto totals = [&](double& v, double& e, double& l1) {
    v = frozen_value;
    e = frozen_error;
    l1 = frozen_l1;
    for (const Panel& p : live) {
      v += p.value;
      e += p.error;
      l1 += p.l1;
    }
  };
  double value = 0.0, error = 0.0, l1 = 0.0;
  while (true) {
    totals(value, error, l1);
    if (live.empty() || error <= std::max({opt.abs_tol, rel * l1, tiny}) || count >= max_panels) break;
    std::pop_heap(live.begin(), live.end(), worse);
    const Panel p = live.back();
    live.pop_back();
    if (p.error <= roundoff * p.l1 || p.depth >= opt.max_depth) {
      frozen_value += p.value;
      frozen_error += p.error;
      frozen_l1 += p.l1;
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    for (const Panel& c : {gk_panel(g, p.a, mid, p.depth + 1), gk_panel(g, mid, p.b, p.depth + 1)}) {
      live.push_back(c);
      std::push_heap(live.begin(), live.end(), worse);
    }
    ++count;
  }
  return {value, error, l1};
}

}  // namespace detail

// Adaptive Gauss-Kronrod (31 points) on [lo, hi]; either bound may be
// infinite (mapped by x = a + t / (1 - t)). Throws QuadratureFailure when the
// error estimate exceeds max(abs_tol, 1e3 * rel_tol * L1).
template <class F>
QuadResult integrate(F&& f, double lo, double hi, const QuadOptions& opt = {}) {
  QuadResult r;
  if (lo == hi) return r;
  if (lo > hi) {
    r = integrate(f, hi, lo, opt);
    r.value = -r.value;
    return r;
  }
  const double rel = std::max(opt.rel_tol, 1e-14);
  const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) {
    const QuadResult left = integrate(f, lo, 0.0, opt), right = integrate(f, 0.0, hi, opt);
    return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
  }
  if (hi_inf) {
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return f(lo + t / s) / (s * s);
    };
    r = detail::adaptive_gk(g, 0.0, 1.0, opt, rel);
  } else if (lo_inf) {
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return f(hi - t / s) / (s * s);
    };
    r = detail::adaptive_gk(g, 0.0, 1.0, opt, rel);
  } else {
    auto g = [&](double x) { return f(x); };
    r = detail::adaptive_gk(g, lo, hi, opt, rel);
  }
  if (!std::isfinite(r.value) || r.error > std::max({opt.abs_tol, 1e3 * rel * r.l1, 1e-280})) {
    char buf[160];
    std::snprintf(buf, sizeof buf, " on [%.6g, %.6g]: value %.6g, estimated error %.3g", lo, hi, r.value, r.error);
    fail(ErrorCode::QuadratureFailure, std::string(opt.label) + buf);
  }
  return r;
}

// Sum of integrate() over consecutive breakpoints (assumed sorted).
template <class F>
QuadResult integrate_pieces(F&& f, const std::vector<double>& points, const QuadOptions& opt = {}) {
  QuadResult total;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    QuadResult r = integrate(f, points[i], points[i + 1], opt);
    total.value += r.value;
    total.error += r.error;
    total.l1 += r.l1;
  }
  return total;
}

// Tanh-sinh rule for integrable endpoint singularities (logarithms at density
// jumps). Same acceptance test as integrate(); rel_tol is floored at 1e-9.
template <class F>
QuadResult integrate_endpoint_singular(F&& f, double lo, double hi, const QuadOptions& opt = {}) {
  QuadResult r;
  if (lo == hi) return r;
  const double rel = std::max(opt.rel_tol, 1e-9);
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double l1 = 0.0;
  std::size_t levels = 0;
  r.value = ts.integrate(f, lo, hi, rel, &r.error, &l1, &levels);
  r.l1 = l1;
  if (!std::isfinite(r.value) || r.error > std::max(opt.abs_tol, 1e3 * rel * l1)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, " on [%.6g, %.6g]: value %.6g, estimated error %.3g", lo, hi, r.value, r.error);
    fail(ErrorCode::QuadratureFailure, std::string(opt.label) + buf);
  }
  return r;
}

// Fixed 10-point Gauss-Legendre rule; exact to machine precision for smooth
// integrands on intervals short compared to their variation scale.
template <class F>
double gauss10(F&& f, double lo, double hi) {
  return boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Running integral F[i] = int_{x[0]}^{x[i]} f, fourth order on arbitrary
// strictly increasing grids (local cubic through four neighbours).
std::vector<double> cumulative_integral(const std::vector<double>& x, const std::vector<double>& f);

enum class Parity { None, Even, Odd };

// Derivative of the given order (1 or 2) of gridded f using five-point
// Fornberg stencils. With a parity the stencil near x[0] = 0 uses mirrored
// ghost values instead of going one-sided.
std::vector<double> grid_derivative(const std::vector<double>& x, const std::vector<double>& f, int order,
                                    Parity parity = Parity::None);

// Fornberg's algorithm: weights c[j + (n)*m] for the m-th derivative at z
// from nodes x[0..n-1], m = 0..max_order.
void fornberg_weights(double z, const double* x, int n, int max_order, double* c);

struct LsqFit {
  Eigen::VectorXd coef;
  Eigen::VectorXd stderr_;
  double rms_residual = 0.0;
  double max_residual = 0.0;
  double condition = 0.0;
};

// Ordinary least squares via SVD. Standard errors use the residual variance
// (zero when the system is exactly determined).
LsqFit least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// Least-squares fit of y ~ sum_j c_j x^j for j = 0..degree.
LsqFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

// Slope of log|y| against log|x|.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct GridSpec {
  double core_extent = 10.0;   // in units of a
  double core_spacing = 0.02;  // in units of a
  double growth = 1.05;
  double outer_spacing = 0.0;  // absolute; 0 picks min(x0/2000, 0.01)
};

// 0 = x[0] < ... < x[n-1] = x0: uniform inside [0, core_extent*a], then
// geometrically growing steps, then uniform.
std::vector<double> refined_grid(double a, double x0, const GridSpec& spec = {});

inline double sqr(double v) { return v * v; }

}  // namespace dualreg
