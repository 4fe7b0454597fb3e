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

#include "solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>

#include "errors.hpp"
#include "ode.hpp"

namespace dualreg {

namespace {

// The comb's spikes are narrower than any sensible a-based spacing; pin
// observation points across each so the stepper cannot step over them.
std::vector<double> grid_for(const PointPotential& p, double x0, const GridSpec& spec) {
  std::vector<double> g = refined_grid(p.a(), x0, spec);
  if (p.kind() != PotentialKind::CheonShigehara) return g;
  const double s = p.a_inner();
  for (double c : {0.0, p.a()})
    for (int j = -48; j <= 48; ++j) {
      const double x = c + s * j / 4.0;
      if (x > 0.0 && x < x0) g.push_back(x);
    }
  std::sort(g.begin(), g.end());
  std::vector<double> out{g.front()};
  for (double x : g)
    if (x - out.back() > 1e-13 * s) out.push_back(x);
  out.back() = x0;
  return out;
}

double distance_to_pi_multiple(double v) {
  const double r = std::fmod(std::abs(v), std::numbers::pi);
  return std::min(r, std::numbers::pi - r);
}

}  // namespace

WaveSolution solve_odd_on(const PointPotential& p, double k, const std::vector<double>& grid, const SolveOptions& opt) {
  require(grid.size() >= 2 && grid.front() == 0.0, "solve_odd: grid must start at 0");
  require(std::is_sorted(grid.begin(), grid.end()) && std::adjacent_find(grid.begin(), grid.end()) == grid.end(),
          "solve_odd: grid must be strictly increasing");
  require(k >= 0.0, "solve_odd: k must be non-negative");
  require(p.kind() == PotentialKind::DualityPreserving || p.kind() == PotentialKind::CheonShigehara,
          "solve_odd: potential kind must be duality or cheon");
  WaveSolution sol;
  sol.k = k;
  sol.potential = p;
  sol.parity = Parity::Odd;
  sol.x = grid;
  sol.psi.resize(grid.size());
  sol.dpsi.resize(grid.size());
  const double k2 = k * k;
  State y{0.0, 1.0};
  detail::integrate_through(
      [&](double x, const State& s, State& ds) {
        ds[0] = s[1];
        ds[1] = (p(x) - k2) * s[0];
      },
      y, grid, opt.tol,
      [&](std::size_t i, const State& s) {
        sol.psi[i] = s[0];
        sol.dpsi[i] = s[1];
      });
  double peak = 0.0;
  for (double v : sol.psi) peak = std::max(peak, std::abs(v));
  const double end = sol.psi.back();
  if (!(std::abs(end) > 1e-8 * peak))
    fail(ErrorCode::RescaleImpossible, "psi(x0) = " + std::to_string(end) + " at k x0 = " + std::to_string(k * grid.back()) +
                                           "; choose another x0 or k");
  sol.raw_value_at_x0 = end;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sol.psi[i] /= end;
    sol.dpsi[i] /= end;
  }
  return sol;
}

double odd_shooting_value(const PointPotential& p, double k, double x0, const SolveOptions& opt) {
  require(x0 > 0.0 && k >= 0.0, "odd_shooting_value: need x0 > 0 and k >= 0");
  const std::vector<double> grid = grid_for(p, x0, opt.grid);
  const double k2 = k * k;
  State y{0.0, 1.0};
  double last = 0.0;
  detail::integrate_through(
      [&](double x, const State& s, State& ds) {
        ds[0] = s[1];
        ds[1] = (p(x) - k2) * s[0];
      },
      y, grid, opt.tol, [&](std::size_t, const State& s) { last = s[0]; });
  return last;
}

WaveSolution solve_odd(const PointPotential& p, double k, double x0, const SolveOptions& opt) {
  require(x0 > 0.0, "solve_odd: x0 must be positive");
  return solve_odd_on(p, k, grid_for(p, x0, opt.grid), opt);
}

JumpReport fit_free_wave(const std::vector<double>& x, const std::vector<double>& psi, double k, double x_lo,
                         double x_hi) {
  require(k > 0.0, "jump extraction needs k > 0");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= x_lo && x[i] <= x_hi) idx.push_back(i);
  if (idx.size() < 16) fail(ErrorCode::NoFreeRegion, "fewer than 16 grid points in the fit window");
  Eigen::MatrixXd A(idx.size(), 2);
  Eigen::VectorXd b(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    A(j, 0) = std::sin(k * x[idx[j]]);
    A(j, 1) = std::cos(k * x[idx[j]]);
    b(j) = psi[idx[j]];
  }
  const LsqFit fit = least_squares(A, b);
  JumpReport r;
  r.P = fit.coef(0);
  r.Q = fit.coef(1);
  r.x_fit = x[idx.front()];
  r.x0 = x[idx.back()];
  r.condition = fit.condition;
  r.fit_residual = fit.max_residual;
  const double scale = std::max(std::abs(r.P), std::abs(r.Q));
  if (fit.condition > 1e8 || std::abs(r.P) < 1e-12 * scale)
    fail(ErrorCode::IllConditionedFit, "sine amplitude unresolved (condition " + std::to_string(fit.condition) +
                                           "); move k x0 away from the free-wave node");
  r.beta_eff = r.Q / (k * r.P);
  r.valid = r.fit_residual < 1e-6 * scale;
  return r;
}

JumpReport extract_jump(const WaveSolution& sol, double eps_v) {
  require(sol.k > 0.0, "extract_jump: k must be positive");
  const double thresh = eps_v * sol.k * sol.k;
  std::size_t i = sol.x.size() - 1;
  while (i > 0 && std::abs(sol.potential(sol.x[i - 1])) < thresh) --i;
  if (std::abs(sol.potential(sol.x[i])) >= thresh || sol.x.size() - i < 16)
    fail(ErrorCode::NoFreeRegion, "|V| stays above " + std::to_string(thresh) + " up to x0 = " +
                                      std::to_string(sol.x.back()) + "; enlarge x0");
  return fit_free_wave(sol.x, sol.psi, sol.k, sol.x[i], sol.x.back());
}

double ClosedJumpSolution::operator()(double x) const {
  const double s = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  return s * (std::sin(k * std::abs(x)) + beta * k * std::cos(k * std::abs(x)));
}

double ClosedJumpSolution::derivative(double x) const {
  return k * std::cos(k * std::abs(x)) - beta * k * k * std::sin(k * std::abs(x));
}

PointPotential PotentialTemplate::at(double a) const {
  switch (kind) {
    case PotentialKind::DualityPreserving:
      require(profile.has_value(), "template needs a profile");
      return PointPotential::duality_preserving(*profile, a, beta);
    case PotentialKind::CheonShigehara:
      return PointPotential::cheon_shigehara(a, beta, a_inner_factor * default_cheon_inner_width(a, beta));
    case PotentialKind::NaiveDeltaPrime:
      require(profile.has_value(), "template needs a profile");
      return PointPotential::naive_delta_prime(*profile, a, beta);
    case PotentialKind::LorentzianToy:
      return PointPotential::lorentzian_toy(a, beta);
  }
  fail(ErrorCode::InvalidArgument, "unknown potential kind");
}

SweepResult sweep_a(const PotentialTemplate& tpl, double k, double x0, const std::vector<double>& a_list,
                    const SolveOptions& opt, unsigned threads) {
  require(!a_list.empty(), "sweep_a: empty a list");
  for (std::size_t i = 1; i < a_list.size(); ++i) require(a_list[i] < a_list[i - 1], "sweep_a: a list must decrease");
  SweepResult out;
  out.rows.resize(a_list.size());
  auto run_row = [&](std::size_t i) {
    SweepRow& row = out.rows[i];
    row.a = a_list[i];
    try {
      const WaveSolution sol = solve_odd(tpl.at(row.a), k, x0, opt);
      const JumpReport rep = extract_jump(sol);
      row.beta_eff = rep.beta_eff;
      row.fit_residual = rep.fit_residual;
      row.abs_error = std::abs(rep.beta_eff - tpl.beta);
      row.rel_error = tpl.beta != 0.0 ? row.abs_error / tpl.beta : row.abs_error;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };
  threads = std::max(1u, threads);
  for (std::size_t start = 0; start < a_list.size(); start += threads) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = start; i < std::min(a_list.size(), start + threads); ++i)
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, run_row, i));
    for (auto& j : jobs) j.get();
  }
  std::vector<double> as, es;
  for (const auto& r : out.rows)
    if (r.ok && r.rel_error > 0) {
      as.push_back(r.a);
      es.push_back(r.rel_error);
    }
  out.fitted_order = loglog_slope(as, es);
  for (std::size_t i = 1; i < as.size(); ++i)
    out.local_orders.push_back(std::log(es[i - 1] / es[i]) / std::log(as[i - 1] / as[i]));
  return out;
}

double choose_x0(const PotentialTemplate& tpl, double k, double a_max, double x_min) {
  require(k > 0.0 && a_max > 0.0, "choose_x0: k and a_max must be positive");
  const PointPotential p = tpl.at(a_max);
  const double thresh = 1e-8 * k * k;
  double x_free = a_max;
  for (double x = a_max; x < 1e4; x *= 1.02)
    if (std::abs(p(x)) >= thresh) x_free = x * 1.02;
  double x0 = std::max(x_min, 2.0 * x_free);
  const double shift = std::atan(tpl.beta * k);
  while (distance_to_pi_multiple(k * x0) < 0.1 || distance_to_pi_multiple(k * x0 + shift) < 0.1) x0 += 0.02 / k;
  return x0;
}

ZeroModeSolution solve_even_zero_mode(const PointPotential& p, double x0, const std::vector<double>& grid,
                                      const GridSpec& spec) {
  require(p.kind() == PotentialKind::DualityPreserving && p.profile(), "zero mode needs a duality-preserving potential");
  const MollifierProfile& prof = *p.profile();
  const double a = p.a(), beta = p.beta();
  ZeroModeSolution z;
  WaveSolution& s = z.phi;
  s.x = grid.empty() ? refined_grid(a, x0, spec) : grid;
  require(s.x.front() == 0.0, "zero mode grid must start at 0");
  s.k = 0.0;
  s.parity = Parity::Even;
  s.potential = p;
  const auto one_plus = [&](double x) { return 1.0 + beta / a * prof.d1(x / a); };
  const auto integrand = [&](double y) { return p(y) / sqr(one_plus(y)); };
  const std::size_t n = s.x.size();
  z.I.assign(n, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 1; i < n; ++i) {
    acc.add(integrate(integrand, s.x[i - 1], s.x[i], {1e-13, 0, 20, "I_a"}).value);
    z.I[i] = acc.value();
  }
  s.psi.resize(n);
  s.dpsi.resize(n);
  std::vector<double> vphi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.x[i];
    const double op = one_plus(x);
    s.psi[i] = 1.0 / op + (x + beta * prof.sigma(x / a)) * z.I[i];
    s.dpsi[i] = op * z.I[i];
    vphi[i] = p(x) * s.psi[i];
  }
  if (n >= 8) {
    const std::vector<double> d2 = grid_derivative(s.x, s.dpsi, 1, Parity::Odd);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      num = std::max(num, std::abs(d2[i] - vphi[i]));
      den = std::max(den, std::abs(vphi[i]));
    }
    z.ode_residual = den > 0 ? num / den : num;
  }
  return z;
}

double self_consistent_residual(const WaveSolution& sol) {
  const PointPotential& p = sol.potential;
  require(p.kind() == PotentialKind::DualityPreserving && p.profile(), "self-consistent check needs duality kind");
  const MollifierProfile& prof = *p.profile();
  const double a = p.a(), beta = p.beta(), k2 = sol.k * sol.k;
  const ZeroModeSolution z = solve_even_zero_mode(p, sol.x.back(), sol.x);
  const std::size_t n = sol.x.size();
  std::vector<double> psi0(n), f_phi(n), f_psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    psi0[i] = sol.x[i] + beta * prof.sigma(sol.x[i] / a);
    f_phi[i] = sol.psi[i] * z.phi.psi[i];
    f_psi[i] = sol.psi[i] * psi0[i];
  }
  const auto c_phi = cumulative_integral(sol.x, f_phi);
  const auto c_psi = cumulative_integral(sol.x, f_psi);
  const double A = sol.dpsi[0] / (1.0 + beta / a * prof.d1_at_0());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rhs = A * psi0[i] - k2 * psi0[i] * c_phi[i] + k2 * z.phi.psi[i] * c_psi[i];
    num = std::max(num, std::abs(sol.psi[i] - rhs));
    den = std::max(den, std::abs(sol.psi[i]));
  }
  return num / den;
}

}  // namespace dualreg
