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

// Fermion gas with the regularized pair potential: lattice perturbation
// theory, an exact-diagonalization check on the same lattice, and the
// thermodynamic-limit energy density expanded to second order in beta.

#pragma once

#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "numerics.hpp"
#include "profiles.hpp"

namespace dualreg {

// ---------------------------------------------------------------- lattice

struct LatticeSpec {
  int M = 0;       // sites, even
  double L = 0.0;  // ring length
  int N = 0;       // fermions, 0 < N < M
  double kappa() const { return L / M; }
};

LatticeSpec make_lattice(int M, double L, int N);

// Momenta lambda = 2 pi n / M with n in [-M/2, M/2).
struct FreeState {
  std::vector<int> modes;
};

// Validates range, distinctness and zero total momentum (mod M).
FreeState make_state(const LatticeSpec& spec, std::vector<int> modes);
// Lowest-energy zero-momentum set: {0, +-1, ...} for odd N, {+-1, ..., +-N/2} for even N.
FreeState ground_zero_momentum(const LatticeSpec& spec);

struct EnergyBreakdown {
  double a = 0.0;
  double beta = 0.0;
  int order = 2;
  double E0 = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
  // Thermodynamic mode: pieces of the beta expansion at fixed a.
  double E1_order1 = 0.0;  // coefficient of beta
  double E1_order2 = 0.0;  // coefficient of beta^2
  double E2_sing = 0.0;    // beta^2 included
  double E2_reg = 0.0;     // beta^2 included
  std::vector<std::string> warnings;
  double total() const { return E0 + E1 + E2; }
};

// V~(lambda_j) = kappa sum_n V(n kappa) e^{i lambda_j n}, j = 0..M-1. Real for even V.
std::vector<double> lattice_transform(const LatticeSpec& spec, const PointPotential& p);

// Energy density to second order in the full potential. Terms with vanishing
// numerator are skipped; a vanishing denominator with a nonzero numerator
// raises DegenerateDenominator.
EnergyBreakdown lattice_pt(const LatticeSpec& spec, const FreeState& state, const PointPotential& p);

struct EDResult {
  std::vector<double> energies;  // ascending, energy density units
  std::size_t dimension = 0;
  int momentum = 0;              // total momentum index of the sector
  bool iterative = false;
};

// Lowest n_levels eigenvalues of H0 + V in the total-momentum sector P (index
// mod M), built in the momentum occupation basis. DimensionTooLarge if
// binomial(M, N) > 2e6.
EDResult exact_diag(const LatticeSpec& spec, const PointPotential& p, int n_levels, int momentum = 0);

// Continuum N = 2 check: lowest zero-momentum pair energy density 2 k^2 / L,
// with k the first root of the odd relative wave function at L/2. Like the
// lattice, the pair potential is taken at the minimum image distance.
double continuum_pair_energy(const PointPotential& p, double L, double tol = 1e-11);

// ---------------------------------------------------------------- thermodynamic limit

// Default quadrature for the nested thermodynamic integrals.
inline QuadOptions thermo_quad() { return {1e-10, 0.0, 30, "thermo"}; }

// Piecewise-linear density, zero outside its nodes. Repeated nodes encode jumps.
class DensityProfile {
 public:
  static DensityProfile fermi_sea(double q);
  // Requires sorted nodes and 0 <= rho <= 1/(2 pi). A nonzero end value becomes a jump to 0.
  static DensityProfile tabulated(std::vector<double> lambda, std::vector<double> rho);

  double operator()(double x) const;
  double hole(double x) const { return 0.5 / std::numbers::pi - (*this)(x); }

  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  double width() const { return hi() - lo(); }
  bool is_even() const { return even_; }
  bool is_fermi_sea() const { return fermi_q_ > 0.0; }
  double fermi_q() const { return fermi_q_; }
  std::string describe() const;

  // int x^k rho(x) dx, exact.
  double moment(int k) const;
  double density() const { return moment(0); }
  // int rho(x) rho(x - d) dx, exact.
  double autocorrelation(double d) const;
  // PV int rho(y) / (x - y) dy, exact.
  double hilbert(double x) const;
  // Breakpoints of the autocorrelation: pairwise node differences.
  std::vector<double> difference_points() const;

 private:
  std::vector<double> x_, y_;
  bool even_ = false;
  double fermi_q_ = 0.0;
};

// Energy density to order beta^2 with the beta expansion taken at fixed a:
// E1 = beta E1_order1 + beta^2 E1_order2 and E2 = E2_sing + E2_reg.
EnergyBreakdown thermo_pt(const DensityProfile& rho, const PointPotential& p, const QuadOptions& opt = thermo_quad());

// Second-order energy without the split, from the hole-weighted integral.
// Independent of thermo_pt's route; used as a cross-check.
double thermo_e2_direct(const DensityProfile& rho, const PointPotential& p, const QuadOptions& opt = thermo_quad());

// S(e) = PV int (F(v + e) - F(v))^2 / (v (v + e)) dv, so that
// E2_sing = -beta^2 / (4 pi a^3) int H(d) S(a d) dd.
double sing_kernel(const MollifierProfile& profile, double e, const QuadOptions& opt = thermo_quad());

// int lambda^2 rho (1 - 2 beta D + 3 beta^2 D^2).
double closed_form_e2(const DensityProfile& rho, double beta);

// int int (lambda - mu)^2 rho rho, exact.
double second_moment_pair(const DensityProfile& rho);

struct DivergenceRow {
  double a = 0.0;
  double E1_beta2 = 0.0;  // beta^2 E1_order2
  double E2_sing = 0.0;
};

struct DivergenceAudit {
  std::vector<DivergenceRow> rows;
  double c1 = 0.0, d1 = 0.0;  // E1_beta2 ~ c1 / a + d1
  double c2 = 0.0, d2 = 0.0;  // E2_sing ~ c2 / a + d2
  double c1_analytic = 0.0;   // beta^2 / (4 pi) int int (l - m)^2 rho rho int [sigma'-transform]^2
  double fit_residual1 = 0.0;  // max relative residual of each fit
  double fit_residual2 = 0.0;
  double cancellation() const { return std::abs(c1 + c2) / std::abs(c1); }
};

// Fits both beta^2 pieces to c / a + d. FitPoor if either relative residual
// exceeds max_residual.
DivergenceAudit divergence_audit(const DensityProfile& rho, const MollifierProfile& profile, double beta,
                                 const std::vector<double>& a_list, double max_residual = 1e-3,
                                 const QuadOptions& opt = thermo_quad());

struct LinearExtrapolation {
  double value = 0.0;  // intercept at a = 0
  double slope = 0.0;
  double residual = 0.0;
};

LinearExtrapolation extrapolate_linear(const std::vector<double>& a, const std::vector<double>& y);

// a -> 0 forms of the regular part, each as the beta^2 coefficient.
struct RegularPartIdentities {
  double four_rho = 0.0;      // term with four rho factors; vanishes by symmetry
  double three_rho_a = 0.0;   // rho(lambda + nu) term
  double three_rho_b = 0.0;   // rho(mu - nu) term; equals three_rho_a
  double intermediate = 0.0;  // (1/2)(a + b - 2 pi four), the (l - m + 2 nu)^2 form
  double reduced = 0.0;       // the (2 nu - l - m)^2 form, fractions removed via the Hilbert transform
  double closed = 0.0;        // (3/2) int int int (l - m)^2 rho rho rho
};

RegularPartIdentities regular_part_identities(const DensityProfile& rho, const QuadOptions& opt = thermo_quad());

// int int mu / (mu - nu) rho(mu) rho(nu) (principal value) and (1/2) D^2.
std::pair<double, double> fraction_identity(const DensityProfile& rho, const QuadOptions& opt = thermo_quad());

}  // namespace dualreg
