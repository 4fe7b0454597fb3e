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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "errors.hpp"
#include "manybody.hpp"

using namespace dualreg;
using doctest::Approx;
using std::numbers::pi;

namespace {

DensityProfile trapezoid() { return DensityProfile::tabulated({-2, -1, 1, 2.5}, {0, 0.1, 0.15, 0}); }

// Values frozen from tests/oracles/mp_oracles.py (mpmath, 30 digits).
constexpr double kSingKernelTanhE1 = 5.0902876563245253571;
constexpr double kSingKernelTanhE02 = 0.32813210082628656806;
constexpr double kE1Order1FermiA001 = -6.577600713658895938;

}  // namespace

TEST_CASE("Fermi sea closed forms") {
  const double q = 2.0;
  const auto rho = DensityProfile::fermi_sea(q);
  CHECK(rho.is_fermi_sea());
  CHECK(rho.is_even());
  CHECK(rho.density() == Approx(q / pi));
  CHECK(rho.moment(1) == Approx(0.0).scale(1.0));
  CHECK(rho.moment(2) == Approx(q * q * q / (3 * pi)));
  for (double d : {0.0, 0.5, 3.0, 3.9, 4.5})
    CHECK(rho.autocorrelation(d) == Approx(std::max(0.0, 2 * q - d) / (4 * pi * pi)));
  for (double x : {0.0, 0.7, 1.9, 2.5, -3.0})
    CHECK(rho.hilbert(x) == Approx(std::log(std::abs((x + q) / (x - q))) / (2 * pi)).scale(1.0));
  CHECK(second_moment_pair(rho) == Approx(2 * rho.density() * rho.moment(2)));
}

TEST_CASE("tabulated density: moments, autocorrelation and Hilbert transform") {
  const auto rho = trapezoid();
  const auto& n = rho.nodes();
  for (int k = 0; k <= 3; ++k) {
    const double num = integrate_pieces([&](double x) { return std::pow(x, k) * rho(x); }, n).value;
    CHECK(rho.moment(k) == Approx(num).epsilon(1e-12));
  }
  for (double d : {0.0, 0.3, 1.7, 3.2}) {
    std::vector<double> pts = n;
    for (double x : n) pts.push_back(x + d);
    std::sort(pts.begin(), pts.end());
    const double num = integrate_pieces([&](double x) { return rho(x) * rho(x - d); }, pts).value;
    CHECK(rho.autocorrelation(d) == Approx(num).epsilon(1e-12));
    CHECK(rho.autocorrelation(-d) == Approx(rho.autocorrelation(d)));
  }
  for (double x : {-1.5, 0.2, 2.0, 3.0}) {
    // Subtract the pole: PV int rho/(x - y) = int (rho(y) - rho(x))/(x - y) + rho(x) ln|(x - lo)/(hi - x)|.
    std::vector<double> pts = n;
    if (x > rho.lo() && x < rho.hi()) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    const double rx = rho(x);
    const double smooth =
        integrate_pieces([&](double y) { return y == x ? 0.0 : (rho(y) - rx) / (x - y); }, pts).value;
    const double ref = smooth + rx * std::log(std::abs((x - rho.lo()) / (rho.hi() - x)));
    CHECK(rho.hilbert(x) == Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("tabulated density validation") {
  CHECK_THROWS_AS(DensityProfile::tabulated({0}, {0.1}), Error);
  CHECK(DensityProfile::tabulated({0, 1}, {0.1, 0}).density() == Approx(0.05));
  CHECK_THROWS_AS(DensityProfile::tabulated({0, 2, 1}, {0, 0.1, 0}), Error);
  CHECK_THROWS_AS(DensityProfile::tabulated({0, 1, 2}, {0, 0.2, 0}), Error);
  const auto jump = DensityProfile::tabulated({-1, -1, 1, 1}, {0, 0.5 / pi, 0.5 / pi, 0});
  CHECK(jump.density() == Approx(1 / pi));
}

TEST_CASE("closed-form energy") {
  const auto rho = DensityProfile::fermi_sea(pi);
  for (double beta : {0.0, 0.05, 0.3})
    CHECK(closed_form_e2(rho, beta) == Approx(pi * pi / 3 * (1 - 2 * beta + 3 * beta * beta)));
}

TEST_CASE("regular-part identities") {
  for (const auto& rho : {DensityProfile::fermi_sea(pi), trapezoid()}) {
    CAPTURE(rho.describe());
    const RegularPartIdentities id = regular_part_identities(rho);
    CHECK(std::abs(id.four_rho) < 1e-9 * id.closed);
    CHECK(id.three_rho_a == Approx(id.three_rho_b).epsilon(1e-9));
    CHECK(id.intermediate == Approx(id.closed).epsilon(1e-9));
    CHECK(id.reduced == Approx(id.closed).epsilon(1e-9));
    const auto [frac, half_d2] = fraction_identity(rho);
    CHECK(frac == Approx(half_d2).epsilon(1e-9));
  }
  CHECK(regular_part_identities(DensityProfile::fermi_sea(pi)).closed == Approx(pi * pi).epsilon(1e-9));
}

TEST_CASE("singular kernel: frozen values and small-e limit") {
  const auto tanh = MollifierProfile::make("tanh");
  CHECK(sing_kernel(tanh, 1.0) == Approx(kSingKernelTanhE1).epsilon(1e-9));
  CHECK(sing_kernel(tanh, 0.2) == Approx(kSingKernelTanhE02).epsilon(1e-9));
  CHECK(sing_kernel(tanh, 1e-3) / 1e-6 == Approx(tanh.fourier_d1_sq_integral()).epsilon(1e-4));
}

TEST_CASE("first-order coefficient: frozen value and a -> 0 limit") {
  const auto rho = DensityProfile::fermi_sea(pi);
  const auto tanh = MollifierProfile::make("tanh");
  const double o1 = thermo_pt(rho, PointPotential::duality_preserving(tanh, 0.01, 0.1)).E1_order1;
  CHECK(o1 == Approx(kE1Order1FermiA001).epsilon(1e-9));
  const double o2 = thermo_pt(rho, PointPotential::duality_preserving(tanh, 0.02, 0.1)).E1_order1;
  const LinearExtrapolation ex = extrapolate_linear({0.02, 0.01}, {o2, o1});
  CHECK(ex.value == Approx(-2 * rho.density() * rho.moment(2)).epsilon(1e-3));
}

TEST_CASE("split second-order energy agrees with the direct integral") {
  const auto tanh = MollifierProfile::make("tanh");
  for (const auto& rho : {trapezoid(), DensityProfile::fermi_sea(pi)}) {
    CAPTURE(rho.describe());
    const auto p = PointPotential::duality_preserving(tanh, 0.05, 0.1);
    const EnergyBreakdown e = thermo_pt(rho, p);
    CHECK(e.E0 == Approx(rho.moment(2)));
    CHECK(e.E2 == Approx(e.E2_sing + e.E2_reg));
    CHECK(e.E1 == Approx(0.1 * e.E1_order1 + 0.01 * e.E1_order2));
    CHECK(e.E2 == Approx(thermo_e2_direct(rho, p)).epsilon(1e-8));
  }
}

TEST_CASE("1/a divergences cancel between first and second order") {
  const DivergenceAudit d =
      divergence_audit(DensityProfile::fermi_sea(pi), MollifierProfile::make("tanh"), 0.05, {0.02, 0.01, 0.005});
  CHECK(d.cancellation() < 1e-2);
  CHECK(d.c1 == Approx(d.c1_analytic).epsilon(5e-3));
  CHECK(d.c1 > 0);
}

TEST_CASE("linear extrapolation") {
  const LinearExtrapolation ex = extrapolate_linear({0.1, 0.2, 0.3}, {1.2, 1.4, 1.6});
  CHECK(ex.value == Approx(1.0));
  CHECK(ex.slope == Approx(2.0));
  CHECK(ex.residual < 1e-12);
  CHECK_THROWS_AS(extrapolate_linear({0.1}, {1.0}), Error);
}
