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

// Two-body odd-sector Schroedinger solver -psi'' + V psi = k^2 psi on [0, x0],
// free-wave jump extraction, a -> 0 sweeps, the exact k = 0 solutions, and
// the naive delta' and Lorentzian counterexamples.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numerics.hpp"
#include "profiles.hpp"

namespace dualreg {

struct SolveOptions {
  double tol = 1e-10;  // local relative and absolute error per step
  GridSpec grid;
};

struct WaveSolution {
  std::vector<double> x, psi, dpsi;
  double k = 0.0;
  Parity parity = Parity::Odd;
  PointPotential potential;
  double raw_value_at_x0 = 0.0;  // psi(x0) before rescaling, for psi'(0) = 1
};

struct JumpReport {
  double P = 0.0;
  double Q = 0.0;
  double beta_eff = 0.0;
  double x_fit = 0.0;
  double x0 = 0.0;
  double fit_residual = 0.0;
  double condition = 0.0;
  bool valid = false;  // fit_residual < 1e-6 max(|P|, |Q|)
};

// psi(0) = 0, psi'(0) = 1, integrated with an embedded Runge-Kutta-Fehlberg
// 7(8) pair and rescaled so that psi(x0) = 1. The grid is refined_grid(a, x0).
WaveSolution solve_odd(const PointPotential& p, double k, double x0, const SolveOptions& opt = {});
// Same on a caller-supplied grid (x[0] = 0, strictly increasing).
WaveSolution solve_odd_on(const PointPotential& p, double k, const std::vector<double>& grid,
                          const SolveOptions& opt = {});

// Unscaled psi(x0) for psi(0) = 0, psi'(0) = 1; smooth in k, for root finding.
double odd_shooting_value(const PointPotential& p, double k, double x0, const SolveOptions& opt = {});

// Least-squares fit psi ~ P sin(kx) + Q cos(kx) on the far region where
// |V| < eps_v k^2, found by scanning in from x0.
JumpReport extract_jump(const WaveSolution& sol, double eps_v = 1e-8);

// Fit on an explicit window [x_lo, x_hi] of the solution grid.
JumpReport fit_free_wave(const std::vector<double>& x, const std::vector<double>& psi, double k, double x_lo,
                         double x_hi);

// psi(x) = sign(x) [sin(k|x|) + beta k cos(k|x|)]: the a -> 0 limit function.
struct ClosedJumpSolution {
  double k = 1.0;
  double beta = 0.0;
  double operator()(double x) const;
  double derivative(double x) const;
};

struct PotentialTemplate {
  PotentialKind kind = PotentialKind::DualityPreserving;
  std::optional<MollifierProfile> profile;
  double beta = 0.0;
  double a_inner_factor = 1.0;  // CheonShigehara: multiplies default_cheon_inner_width
  PointPotential at(double a) const;
};

struct SweepRow {
  double a = 0.0;
  double beta_eff = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double fit_residual = 0.0;
  bool ok = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double fitted_order = 0.0;        // slope of log rel_error vs log a over ok rows
  std::vector<double> local_orders;  // between consecutive ok rows
};

// Rows run concurrently on up to `threads` workers; failures are recorded per row.
SweepResult sweep_a(const PotentialTemplate& tpl, double k, double x0, const std::vector<double>& a_list,
                    const SolveOptions& opt = {}, unsigned threads = 1);

// Smallest x0 >= x_min leaving a free region of at least half the box at
// a_max, nudged so that k x0 stays 0.1 away from pi Z.
double choose_x0(const PotentialTemplate& tpl, double k, double a_max, double x_min = 1.0);

struct ZeroModeSolution {
  WaveSolution phi;          // phi^0 and its derivative
  std::vector<double> I;     // I_a(x) = int_0^x V / (1 + beta sigma_a')^2
  double ode_residual = 0.0;  // max |phi'' - V phi| / max |V phi|
};

// Even k = 0 solution phi^0 = 1/(1 + beta sigma_a') + (x + beta sigma_a) I_a
// (DualityPreserving only). Uses refined_grid unless a grid is given.
ZeroModeSolution solve_even_zero_mode(const PointPotential& p, double x0,
                                      const std::vector<double>& grid = {}, const GridSpec& spec = {});

// Relative residual of an odd DualityPreserving solution in the integral form
// psi = A psi0 - k^2 psi0 int psi phi0 + k^2 phi0 int psi psi0.
double self_consistent_residual(const WaveSolution& sol);

struct NaiveResult {
  WaveSolution solution;
  JumpReport jump;
  std::vector<double> singular_points;  // zeros of 1 - beta sigma_a'
  double excision = 0.0;
};

// (1 - beta sigma_a') psi'' = -k^2 psi + beta sigma_a'' psi', integrated in
// flux form u = (1 - beta sigma_a') psi'. Simple zeros of the coefficient are
// crossed by principal value; a degenerate zero raises SingularCoefficient.
NaiveResult solve_naive_delta_prime(const MollifierProfile& profile, double a, double beta, double k, double x0,
                                    const SolveOptions& opt = {}, double excision_over_a = 1e-6);

// Jump of the solution linearised in beta: beta * Q1 / k, where psi1 solves
// psi1'' + k^2 psi1 = k sigma_a'' cos(kx) - k^2 sigma_a' sin(kx).
double naive_first_order_beta_eff(const MollifierProfile& profile, double a, double beta, double k, double x0,
                                  const SolveOptions& opt = {});

struct LorentzianToyResult {
  std::vector<double> x;
  std::vector<double> f;             // principal-value f_a(x)
  std::vector<double> f_first_order;  // x + beta sigma_a(x) + 1
  double x_probe = 0.0;
  double jump = 0.0;              // f(x_p) - f(-x_p) - 2 x_p
  double jump_first_order = 0.0;  // same for the first-order solution
};

// f_a(x) = PV int_{-1}^x dy / (1 - beta sigma_a'(y)), sigma_a' = (2/pi) a/(a^2+y^2).
LorentzianToyResult lorentzian_toy(double a, double beta, const std::vector<double>& x_list, double x_probe = 0.05);

}  // namespace dualreg
