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

// The two counterexamples: a delta' mollified naively (no duality-preserving
// denominator) and the Lorentzian toy model solved by principal value.

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "ode.hpp"
#include "solver.hpp"

namespace dualreg {

namespace {

using std::numbers::pi;

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

NaiveResult solve_naive_delta_prime(const MollifierProfile& profile, double a, double beta, double k, double x0,
                                    const SolveOptions& opt, double excision_over_a) {
  require(a > 0 && beta >= 0 && k > 0 && x0 > 0, "naive delta': need a, k, x0 > 0 and beta >= 0");
  const auto c = [&](double x) { return 1.0 - beta / a * profile.d1(x / a); };
  const auto c1 = [&](double x) { return -beta / (a * a) * profile.d2(x / a); };
  const auto c2 = [&](double x) { return -beta / (a * a * a) * profile.d3(x / a); };

  NaiveResult res;
  if (std::abs(c(0.0)) < 1e-12)
    fail(ErrorCode::SingularCoefficient, "1 - beta sigma_a'(0) = 0: double zero at the origin (beta sigma'(0) = a)");
  // Locate zeros of the coefficient on (0, x0].
  const int n_scan = 20000;
  double prev_x = 0.0, prev_c = c(0.0), min_abs = std::abs(prev_c);
  for (int i = 1; i <= n_scan; ++i) {
    const double x = x0 * i / n_scan;
    const double cx = c(x);
    min_abs = std::min(min_abs, std::abs(cx));
    if ((cx < 0) != (prev_c < 0)) {
      const double r = bisect_root(c, prev_x, x);
      if (std::abs(c1(r)) * a < 1e-9)
        fail(ErrorCode::SingularCoefficient, "degenerate zero of 1 - beta sigma_a' at x = " + std::to_string(r));
      res.singular_points.push_back(r);
    }
    prev_x = x;
    prev_c = cx;
  }
  if (res.singular_points.empty() && min_abs < 1e-9)
    fail(ErrorCode::SingularCoefficient, "1 - beta sigma_a' touches zero without changing sign");
  const double eps = excision_over_a * a;
  res.excision = eps;
  for (std::size_t i = 0; i < res.singular_points.size(); ++i) {
    const double r = res.singular_points[i];
    const double next = i + 1 < res.singular_points.size() ? res.singular_points[i + 1] : x0 + 2 * eps;
    const double prev = i > 0 ? res.singular_points[i - 1] : -r;
    if (r - prev < 4 * eps || next - r < 4 * eps || r + eps >= x0)
      fail(ErrorCode::SingularCoefficient, "zeros of 1 - beta sigma_a' too close to each other or to x0");
  }

  const std::vector<double> grid = refined_grid(a, x0, opt.grid);
  const double k2 = k * k;
  const auto sys = [&](double x, const State& s, State& ds) {
    ds[0] = s[1] / c(x);
    ds[1] = -k2 * s[0];
  };
  WaveSolution& sol = res.solution;
  sol.k = k;
  sol.parity = Parity::Odd;
  sol.potential = PointPotential::naive_delta_prime(profile, a, beta);

  State y{0.0, c(0.0)};
  double seg_lo = 0.0;
  std::size_t gi = 0;
  for (std::size_t s = 0; s <= res.singular_points.size(); ++s) {
    const bool last = s == res.singular_points.size();
    const double seg_hi = last ? x0 : res.singular_points[s] - eps;
    std::vector<double> pts{seg_lo};
    while (gi < grid.size() && grid[gi] <= seg_hi) {
      if (grid[gi] > seg_lo) pts.push_back(grid[gi]);
      ++gi;
    }
    if (pts.back() < seg_hi) pts.push_back(seg_hi);
    const std::size_t first_out = sol.x.size();
    detail::integrate_through(sys, y, pts, opt.tol, [&](std::size_t i, const State& st) {
      const bool on_grid = std::binary_search(grid.begin(), grid.end(), pts[i]);
      if (on_grid && (sol.x.empty() || pts[i] > sol.x.back())) {
        sol.x.push_back(pts[i]);
        sol.psi.push_back(st[0]);
        sol.dpsi.push_back(st[1] / c(pts[i]));
      }
    });
    (void)first_out;
    if (last) break;
    // Principal-value bridge over [r - eps, r + eps], first order in eps.
    const double r = res.singular_points[s];
    const double d1 = c1(r), d2 = c2(r);
    const double psi_m = y[0], u = y[1];
    y[1] = u - 2.0 * eps * k2 * (psi_m - u / d1);
    y[0] = psi_m - u * d2 * eps / (d1 * d1) - 2.0 * eps * k2 / d1 * (psi_m - 2.0 * u / d1);
    seg_lo = r + eps;
    while (gi < grid.size() && grid[gi] <= seg_lo) ++gi;
  }
  const double end = sol.psi.back();
  if (!(std::abs(end) > 0.0)) fail(ErrorCode::RescaleImpossible, "psi(x0) = 0");
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    sol.psi[i] /= end;
    sol.dpsi[i] /= end;
  }
  sol.raw_value_at_x0 = end;
  res.jump = extract_jump(sol);
  return res;
}

double naive_first_order_beta_eff(const MollifierProfile& profile, double a, double beta, double k, double x0,
                                  const SolveOptions& opt) {
  require(a > 0 && k > 0 && x0 > 0, "first-order naive delta': need a, k, x0 > 0");
  const double k2 = k * k;
  const auto forcing = [&](double x) {
    return k / (a * a) * profile.d2(x / a) * std::cos(k * x) - k2 / a * profile.d1(x / a) * std::sin(k * x);
  };
  const std::vector<double> grid = refined_grid(a, x0, opt.grid);
  std::vector<double> psi1(grid.size());
  State y{0.0, 0.0};
  detail::integrate_through(
      [&](double x, const State& s, State& ds) {
        ds[0] = s[1];
        ds[1] = -k2 * s[0] + forcing(x);
      },
      y, grid, opt.tol, [&](std::size_t i, const State& s) { psi1[i] = s[0]; });
  const double thresh = 1e-10 * k2;
  std::size_t i = grid.size() - 1;
  while (i > 0 && std::abs(profile.d1(grid[i - 1] / a)) / a < thresh &&
         std::abs(profile.d2(grid[i - 1] / a)) / (a * a) < thresh)
    --i;
  const JumpReport r = fit_free_wave(grid, psi1, k, grid[i], grid.back());
  return beta * r.Q / k;
}

LorentzianToyResult lorentzian_toy(double a, double beta, const std::vector<double>& x_list, double x_probe) {
  require(a > 0 && beta >= 0, "Lorentzian toy: need a > 0 and beta >= 0");
  require(x_probe > 0 && x_probe < 1, "Lorentzian toy: probe must lie in (0, 1)");
  const auto g = [&](double y) { return 1.0 / (1.0 - beta * 2.0 / pi * a / (a * a + y * y)); };
  const double b = 2.0 * a * beta / pi;
  const double r2 = b - a * a;
  std::vector<double> roots;
  if (r2 > 0) roots = {-std::sqrt(r2), std::sqrt(r2)};

  // Integral over [-1, x] with windows of half-width delta cut around the roots.
  const auto excised = [&](double x, double delta) {
    std::vector<double> pts{-1.0};
    for (double r : roots)
      if (r > -1.0 && r < x) {
        pts.push_back(r - delta);
        pts.push_back(r + delta);
      }
    pts.push_back(x);
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2)
      v += integrate(g, pts[i], pts[i + 1], {1e-12, 1e-14, 30, "Lorentzian toy"}).value;
    return v;
  };
  const auto f = [&](double x) {
    if (x == -1.0) return 0.0;
    if (x < -1.0) return -integrate(g, x, -1.0, {1e-12, 1e-14, 30, "Lorentzian toy"}).value;
    double delta = 1.0;
    bool inside = false;
    for (double r : roots) {
      if (r <= -1.0 || r >= x + 1e-300) continue;
      inside = true;
      delta = std::min({delta, 0.05 * std::sqrt(r2), 0.25 * (x - r), 0.25 * (r + 1.0)});
    }
    if (!inside) return excised(x, 0.0);
    // Excision error is odd in delta: remove the linear then the cubic term.
    const double i1 = excised(x, delta), i2 = excised(x, delta / 2), i4 = excised(x, delta / 4);
    const double r1 = 2 * i2 - i1, r2b = 2 * i4 - i2;
    return (8 * r2b - r1) / 7.0;
  };
  const auto first_order = [&](double x) { return x + beta * 2.0 / pi * std::atan(x / a) + 1.0; };

  LorentzianToyResult out;
  out.x = x_list;
  for (double x : x_list) {
    out.f.push_back(f(x));
    out.f_first_order.push_back(first_order(x));
  }
  out.x_probe = x_probe;
  out.jump = f(x_probe) - f(-x_probe) - 2 * x_probe;
  out.jump_first_order = first_order(x_probe) - first_order(-x_probe) - 2 * x_probe;
  return out;
}

}  // namespace dualreg
