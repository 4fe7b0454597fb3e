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

// Small-beta expansion of the odd two-body wave function at fixed range a:
// psi = (1 + beta sigma_a(x)/x) sum_n beta^n g_n(x), with psi_(n) collecting
// the order-n terms, g_0 = sin(kx)/sin(kx0) and g_n(x0) = 0 for n >= 1.

#pragma once

#include <vector>

#include "profiles.hpp"
#include "solver.hpp"

namespace dualreg {

// Green's kernel of d^2/dx^2 + k^2 on [0, x0], divided by k y (real form).
// Throws ResonantBox if sin(k x0) = 0.
double kernel_j(double x, double y, double k, double x0);

enum class RecursionMethod {
  Smooth,     // by-parts reversed: integrand sigma_a''(y) g_n(y)/y against sin/cos
  KinkSplit,  // sigma_a (j g_n)'' with the kernel split at y = x
};

struct PerturbOrder {
  int n = 0;
  std::vector<double> g;
  std::vector<double> psi;   // psi_(n) = g_n + (sigma_a/x) g_{n-1}
  std::vector<double> dpsi;  // derivative of psi_(n)
};

struct PerturbSeries {
  MollifierProfile profile;
  double a = 0.0, k = 0.0, x0 = 0.0;
  std::vector<double> x;
  std::vector<double> sigma_over_x;  // sigma_a(x)/x
  std::vector<double> d2_over_x;     // sigma_a''(x)/x
  std::vector<PerturbOrder> orders;
};

// Composite grid of about `points` nodes: fine uniform spacing on [0, 40a]
// (the mollifier core plus the extrapolation window), then geometric growth
// and a uniform outer part.
std::vector<double> perturb_grid(double a, double x0, std::size_t points);

// Orders 0..n_max. Throws GridTooCoarse if the core spacing exceeds a/50.
PerturbSeries perturb_series(const MollifierProfile& profile, double a, double k, double x0, int n_max,
                             const std::vector<double>& grid, RecursionMethod method = RecursionMethod::Smooth);

// One recursion step from the last order held by `s`.
PerturbOrder recursion_step(const PerturbSeries& s, const PerturbOrder& prev, RecursionMethod method);

// sum_{n <= m} beta^n psi_(n) on the series grid.
std::vector<double> series_sum(const PerturbSeries& s, double beta, int m);

// max |psi_exact - sum_{n<=m} beta^n psi_(n)| where psi_exact solves the full
// problem normalized to psi(x0) = 1 + beta sigma_a(x0)/x0. Only grid points
// with x >= x_min count; inside the core the beta^(m+2)/a terms dominate until
// beta << a.
double series_residual(const PerturbSeries& s, double beta, int m, const SolveOptions& opt = {},
                       double x_min = 0.0);

struct ConjectureRow {
  int n = 0;
  double a = 0.0;
  double psi_next0 = 0.0;  // psi_(n+1)(0+)
  double dpsi0 = 0.0;      // psi_(n)'(0+)
  double mismatch = 0.0;
  double window_shift = 0.0;  // change of either value under window doubling
};

struct ConjectureOptions {
  double window_lo = 10.0;  // in units of a
  double window_hi = 40.0;
  std::size_t points = 100000;
  unsigned threads = 1;
  double max_window_shift = 0.1;
};

struct ConjectureResult {
  std::vector<ConjectureRow> rows;
  std::vector<PerturbSeries> series;  // one per a, same order as a_list
};

// Extrapolates psi_(n+1) and psi_(n)' to x -> 0+ by quadratic fits on
// [window_lo a, window_hi a]; ExtrapolationUnstable if doubling the window
// moves either value by more than max_window_shift (1 + |value|).
ConjectureResult conjecture_check(const MollifierProfile& profile, const std::vector<double>& a_list, double k,
                                  double x0, int n_max, const ConjectureOptions& opt = {});

}  // namespace dualreg
