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

#include "perturb.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>

#include "errors.hpp"
#include "numerics.hpp"

namespace dualreg {

namespace {

// sin z / z and its first two derivatives, by series near 0.
struct Sinc {
  double s, d1, d2;
};

Sinc sinc(double z) {
  if (std::abs(z) < 0.1) {
    const double z2 = z * z;
    double s = 0.0, d1 = 0.0, d2 = 0.0, term = 1.0;  // term = (-1)^m / (2m+1)!
    double zp = 1.0;                                   // z^{2m}
    for (int m = 0; m <= 8; ++m) {
      s += term * zp;
      if (m >= 1) {
        d1 += term * 2 * m * zp / z;
        d2 += term * 2 * m * (2 * m - 1) * zp / z2;
      }
      zp *= z2;
      term /= -static_cast<double>((2 * m + 2) * (2 * m + 3));
    }
    if (z == 0.0) d1 = 0.0, d2 = -1.0 / 3.0;
    return {s, d1, d2};
  }
  const double sn = std::sin(z), cs = std::cos(z);
  return {sn / z, (z * cs - sn) / (z * z), ((2.0 - z * z) * sn - 2.0 * z * cs) / (z * z * z)};
}

double resonance_guard(double k, double x0) {
  const double s0 = std::sin(k * x0);
  if (std::abs(s0) < 1e-10) fail(ErrorCode::ResonantBox, "sin(k x0) = 0 at k x0 = " + std::to_string(k * x0));
  return s0;
}

// Quadratic fit on [lo, hi] evaluated at 0.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& f, double lo, double hi) {
  std::vector<double> xs, fs;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= lo && x[i] <= hi) {
      xs.push_back(x[i]);
      fs.push_back(f[i]);
    }
  if (xs.size() < 8)
    fail(ErrorCode::ExtrapolationUnstable, "fewer than 8 points in the extrapolation window");
  return polyfit(xs, fs, 2).coef(0);
}

}  // namespace

double kernel_j(double x, double y, double k, double x0) {
  require(y >= 0 && y <= x0 && x >= 0 && x <= x0, "kernel_j: arguments outside [0, x0]");
  const double s0 = resonance_guard(k, x0);
  if (y < x) return -sinc(k * y).s * std::sin(k * (x0 - x)) / s0;
  if (y == 0.0) return 0.0;  // only reached for x = y = 0
  return -std::sin(k * x) * std::sin(k * (x0 - y)) / (s0 * k * y);
}

std::vector<double> perturb_grid(double a, double x0, std::size_t points) {
  require(points >= 1000, "perturb_grid: need at least 1000 points");
  require(40.0 * a < x0, "perturb_grid: x0 must exceed 40 a");
  GridSpec spec;
  spec.core_extent = 40.0;
  spec.core_spacing = 40.0 / (0.5 * static_cast<double>(points));
  spec.growth = 1.02;
  spec.outer_spacing = x0 / (0.45 * static_cast<double>(points));
  return refined_grid(a, x0, spec);
}

PerturbSeries perturb_series(const MollifierProfile& profile, double a, double k, double x0, int n_max,
                             const std::vector<double>& grid, RecursionMethod method) {
  require(a > 0 && k > 0 && x0 > 0 && n_max >= 0, "perturb_series: need a, k, x0 > 0 and n_max >= 0");
  require(grid.size() >= 16 && grid.front() == 0.0 && std::abs(grid.back() - x0) < 1e-12 * x0,
          "perturb_series: grid must span [0, x0]");
  const double s0 = resonance_guard(k, x0);
  for (std::size_t i = 1; i < grid.size() && grid[i - 1] < 10.0 * a; ++i)
    if (grid[i] - grid[i - 1] > a / 50.0 * (1 + 1e-9))
      fail(ErrorCode::GridTooCoarse, "spacing " + std::to_string(grid[i] - grid[i - 1]) + " > a/50 inside 10a");

  PerturbSeries s{profile, a, k, x0, grid, {}, {}, {}};
  const std::size_t n = grid.size();
  s.sigma_over_x.resize(n);
  s.d2_over_x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid[i] / a;
    s.sigma_over_x[i] = profile.sigma_over_t(t) / a;
    s.d2_over_x[i] = profile.d2_over_t(t) / (a * a * a);
  }
  PerturbOrder o0;
  o0.g.resize(n);
  o0.dpsi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    o0.g[i] = std::sin(k * grid[i]) / s0;
    o0.dpsi[i] = k * std::cos(k * grid[i]) / s0;
  }
  o0.g.back() = 1.0;
  o0.psi = o0.g;
  s.orders.push_back(std::move(o0));
  for (int m = 1; m <= n_max; ++m) s.orders.push_back(recursion_step(s, s.orders.back(), method));
  return s;
}

PerturbOrder recursion_step(const PerturbSeries& s, const PerturbOrder& prev, RecursionMethod method) {
  const std::vector<double>& x = s.x;
  const std::size_t n = x.size();
  const double k = s.k, x0 = s.x0;
  const double s0 = resonance_guard(k, x0);
  const double cot = std::cos(k * x0) / s0;
  const std::vector<double>& g = prev.g;
  PerturbOrder next;
  next.n = prev.n + 1;
  next.g.resize(n);
  next.psi.resize(n);
  next.dpsi.resize(n);

  if (method == RecursionMethod::Smooth) {
    // psi_(n+1)'' + k^2 psi_(n+1) = (sigma_a''/x) g_n, psi_(n+1)(0) = 0,
    // psi_(n+1)(x0) = (sigma_a(x0)/x0) g_n(x0).
    std::vector<double> fc(n), fs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = s.d2_over_x[i] * g[i];
      fc[i] = f * std::cos(k * x[i]);
      fs[i] = f * std::sin(k * x[i]);
    }
    const auto C = cumulative_integral(x, fc);
    const auto S = cumulative_integral(x, fs);
    const double target = s.sigma_over_x.back() * g.back();
    const double part_end = (std::sin(k * x0) * C.back() - std::cos(k * x0) * S.back()) / k;
    const double A = (target - part_end) / s0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sn = std::sin(k * x[i]), cs = std::cos(k * x[i]);
      next.psi[i] = (sn * C[i] - cs * S[i]) / k + A * sn;
      next.dpsi[i] = cs * C[i] + sn * S[i] + A * k * cs;
      next.g[i] = next.psi[i] - s.sigma_over_x[i] * g[i];
    }
    next.g.back() = 0.0;
    return next;
  }

  // Kink split: g_{n+1}(x) = sin(kx) [int_0^x sigma_a (A g)'' + int_x^x0 sigma_a (C g)'']
  //                          + cos(kx) int_0^x sigma_a (B g)''
  // with A = cot sinc(ky), B = -sinc(ky), C g = -cos(ky) (g/y)/k + cot sinc(ky) g.
  // The kink of j at y = x contributes sigma_a(x) g(x)/x, which is exactly the
  // difference psi_(n+1) - g_(n+1).
  const auto g1 = grid_derivative(x, g, 1, Parity::Odd);
  const auto g2 = grid_derivative(x, g, 2, Parity::Odd);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = i == 0 ? g1[0] : g[i] / x[i];
  const auto h1 = grid_derivative(x, h, 1, Parity::Even);
  const auto h2 = grid_derivative(x, h, 2, Parity::Even);
  std::vector<double> fa(n), fb(n), fcc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = x[i];
    const double sig = s.sigma_over_x[i] * y;
    const Sinc z = sinc(k * y);
    const double sg2 = k * k * z.d2 * g[i] + 2.0 * k * z.d1 * g1[i] + z.s * g2[i];  // (sinc g)''
    const double cs = std::cos(k * y), sn = std::sin(k * y);
    const double ch2 = -k * k * cs * h[i] - 2.0 * k * sn * h1[i] + cs * h2[i];  // (cos h)''
    fa[i] = sig * cot * sg2;
    fb[i] = -sig * sg2;
    fcc[i] = sig * (-ch2 / k + cot * sg2);
  }
  const auto P = cumulative_integral(x, fa);
  const auto Q = cumulative_integral(x, fb);
  const auto R = cumulative_integral(x, fcc);
  for (std::size_t i = 0; i < n; ++i) {
    const double sn = std::sin(k * x[i]), cs = std::cos(k * x[i]);
    next.g[i] = sn * (P[i] + R.back() - R[i]) + cs * Q[i];
    next.psi[i] = next.g[i] + s.sigma_over_x[i] * g[i];
  }
  next.dpsi = grid_derivative(x, next.psi, 1, Parity::Odd);
  return next;
}

std::vector<double> series_sum(const PerturbSeries& s, double beta, int m) {
  require(m >= 0 && m < static_cast<int>(s.orders.size()), "series_sum: order not computed");
  std::vector<double> out(s.x.size(), 0.0);
  double bn = 1.0;
  for (int n = 0; n <= m; ++n, bn *= beta)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += bn * s.orders[n].psi[i];
  return out;
}

double series_residual(const PerturbSeries& s, double beta, int m, const SolveOptions& opt, double x_min) {
  const auto sum = series_sum(s, beta, m);
  const WaveSolution exact = solve_odd_on(PointPotential::duality_preserving(s.profile, s.a, beta), s.k, s.x, opt);
  const double norm = 1.0 + beta * s.sigma_over_x.back();
  double worst = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (s.x[i] >= x_min) worst = std::max(worst, std::abs(exact.psi[i] * norm - sum[i]));
  return worst;
}

ConjectureResult conjecture_check(const MollifierProfile& profile, const std::vector<double>& a_list, double k,
                                  double x0, int n_max, const ConjectureOptions& opt) {
  require(n_max >= 1 && n_max <= 4, "conjecture_check: n_max must be in 1..4");
  require(!a_list.empty(), "conjecture_check: empty a list");
  require(opt.window_lo > 0 && opt.window_hi > opt.window_lo, "conjecture_check: bad window");
  ConjectureResult out;
  std::vector<std::optional<PerturbSeries>> series(a_list.size());
  std::vector<std::vector<ConjectureRow>> per_a(a_list.size());
  auto run = [&](std::size_t ia) {
    const double a = a_list[ia];
    require(2.0 * opt.window_hi * a <= x0, "conjecture_check: doubled window exceeds x0");
    PerturbSeries s = perturb_series(profile, a, k, x0, n_max, perturb_grid(a, x0, opt.points));
    for (int n = 0; n < n_max; ++n) {
      ConjectureRow row;
      row.n = n;
      row.a = a;
      const auto& up = s.orders[n + 1].psi;
      const auto& dn = s.orders[n].dpsi;
      row.psi_next0 = extrapolate_to_zero(s.x, up, opt.window_lo * a, opt.window_hi * a);
      row.dpsi0 = extrapolate_to_zero(s.x, dn, opt.window_lo * a, opt.window_hi * a);
      const double up2 = extrapolate_to_zero(s.x, up, 2 * opt.window_lo * a, 2 * opt.window_hi * a);
      const double dn2 = extrapolate_to_zero(s.x, dn, 2 * opt.window_lo * a, 2 * opt.window_hi * a);
      row.window_shift = std::max(std::abs(up2 - row.psi_next0), std::abs(dn2 - row.dpsi0));
      row.mismatch = std::abs(row.psi_next0 - row.dpsi0);
      if (row.window_shift > opt.max_window_shift * (1.0 + std::abs(row.dpsi0)))
        fail(ErrorCode::ExtrapolationUnstable, "order " + std::to_string(n) + " at a = " + std::to_string(a) +
                                                   ": window doubling moves the x -> 0 value by " +
                                                   std::to_string(row.window_shift));
      per_a[ia].push_back(row);
    }
    series[ia] = std::move(s);
  };
  const unsigned threads = std::max(1u, opt.threads);
  for (std::size_t start = 0; start < a_list.size(); start += threads) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = start; i < std::min(a_list.size(), start + threads); ++i)
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, run, i));
    for (auto& j : jobs) j.get();
  }
  for (int n = 0; n < n_max; ++n)
    for (const auto& rows : per_a)
      for (const auto& r : rows)
        if (r.n == n) out.rows.push_back(r);
  for (auto& s : series) out.series.push_back(std::move(*s));
  return out;
}

}  // namespace dualreg
