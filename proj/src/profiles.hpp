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

// Mollifier profiles sigma(t), the regularized pointlike potentials built
// from them, and the Fourier-side quantities used by the many-body code.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualreg {

// User-supplied profile. Derivatives at 0 feed the small-t series.
struct ProfileFunctions {
  std::function<double(double)> sigma, d1, d2, d3;
  double d1_at_0 = 0.0;
  double d3_at_0 = 0.0;
  double d5_at_0 = 0.0;
  double t_far = 50.0;
};

// A smooth odd step sigma(t) -> sgn(t). Immutable and cheap to copy.
class MollifierProfile {
 public:
  enum class Shape { Tanh, Algebraic, Smoothstep, Custom };

  // name in {tanh, algebraic, smoothstep}; throws UnknownProfile.
  static MollifierProfile make(std::string_view name);
  // Runs the admissibility checker; throws AdmissibilityViolation.
  static MollifierProfile custom(std::string name, ProfileFunctions fns);

  const std::string& name() const;
  Shape shape() const;

  double sigma(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  double d3(double t) const;
  double d1_at_0() const;
  double d3_at_0() const;
  double d5_at_0() const;

  // sigma(t)/t and sigma''(t)/t, switching to the Taylor series for |t| < 1e-3.
  double sigma_over_t(double t) const;
  double d2_over_t(double t) const;

  // Past t_far both |sigma - 1| and |t^2 sigma''| stay below 1e-6.
  double t_far() const;

  // Transform of sigma': int sigma'(t) e^{i w t} dt (real and even).
  double fourier_d1(double omega) const;
  // int [fourier_d1(w)]^2 dw = 2 pi int sigma'^2 dt.
  double fourier_d1_sq_integral() const;
  // F(x) = int_0^x z fourier_d1(z) dz, and F(u + e) - F(u) without cancellation.
  double F(double x) const;
  double F_difference(double u, double e) const;

 private:
  struct Impl;
  explicit MollifierProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Checks oddness, sigma' >= 0, sigma'(0) > 0 and the two tail limits.
// Throws AdmissibilityViolation naming the failed condition and t.
void check_admissibility(const MollifierProfile& p);

enum class PotentialKind { DualityPreserving, CheonShigehara, NaiveDeltaPrime, LorentzianToy };

const char* potential_kind_name(PotentialKind kind);

// Width of the Gaussians replacing the comb's deltas: min(a/100, 0.01 a^3/beta^2).
double default_cheon_inner_width(double a, double beta);

// Regularized pointlike interaction of range a and jump parameter beta.
//
// DualityPreserving  V = beta sigma_a'' / (x + beta sigma_a)
// CheonShigehara     three Gaussian spikes of width a_inner at -a, 0, +a
// NaiveDeltaPrime    coefficient beta sigma_a'(x) of the mollified delta'
// LorentzianToy      beta (2/pi) a / (a^2 + x^2)
//
// For the last two kinds operator() returns the coefficient, not a potential.
class PointPotential {
 public:
  // The zero potential (DualityPreserving with beta = 0, a = 1).
  PointPotential() = default;
  static PointPotential duality_preserving(const MollifierProfile& profile, double a, double beta);
  // a_inner <= 0 selects default_cheon_inner_width(a, beta).
  static PointPotential cheon_shigehara(double a, double beta, double a_inner = 0.0);
  static PointPotential naive_delta_prime(const MollifierProfile& profile, double a, double beta);
  static PointPotential lorentzian_toy(double a, double beta);

  PotentialKind kind() const { return kind_; }
  double a() const { return a_; }
  double beta() const { return beta_; }
  double a_inner() const { return a_inner_; }
  const MollifierProfile* profile() const { return profile_ ? &*profile_ : nullptr; }

  double operator()(double x) const;

  // Smallest R such that |V(x)| < rel * max|V| on a geometric scan beyond R.
  double support_radius(double rel = 1e-14) const;

 private:
  PotentialKind kind_ = PotentialKind::DualityPreserving;
  std::optional<MollifierProfile> profile_;
  double a_ = 1.0;
  double beta_ = 0.0;
  double a_inner_ = 0.0;
};

struct PotentialFourier {
  std::vector<double> lambda;
  std::vector<double> vhat;
  // beta-expansion ingredients of vhat(lambda) - vhat(0)
  std::vector<double> order1;  // beta lambda^2
  std::vector<double> order2;  // -beta^2 lambda^2 / (4 a pi) * int [sigma'-transform]^2
  double sigma1_sq_integral = 0.0;
  double truncation_radius = 0.0;
};

// vhat(lambda) = int V(x) cos(lambda x) dx. Only DualityPreserving and
// CheonShigehara are potentials; the other kinds are rejected.
PotentialFourier potential_fourier(const PointPotential& p, const std::vector<double>& lambdas);

}  // namespace dualreg
