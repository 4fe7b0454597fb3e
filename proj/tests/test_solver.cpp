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
#include "solver.hpp"

using namespace dualreg;
using doctest::Approx;

namespace {

// Fixed-step classical RK4 for psi'' = (V - k^2) psi, psi(0) = 0, psi'(0) = 1.
std::pair<double, double> rk4_shoot(const PointPotential& V, double k, double x0, int steps) {
  const double h = x0 / steps, k2 = k * k;
  double y = 0.0, dy = 1.0, x = 0.0;
  auto f = [&](double xx, double yy) { return (V(xx) - k2) * yy; };
  for (int i = 0; i < steps; ++i) {
    const double k1y = dy, k1d = f(x, y);
    const double k2y = dy + 0.5 * h * k1d, k2d = f(x + 0.5 * h, y + 0.5 * h * k1y);
    const double k3y = dy + 0.5 * h * k2d, k3d = f(x + 0.5 * h, y + 0.5 * h * k2y);
    const double k4y = dy + h * k3d, k4d = f(x + h, y + h * k3y);
    y += h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    dy += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
    x += h;
  }
  return {y, dy};
}

}  // namespace

TEST_CASE("adaptive solve agrees with a fixed-step RK4 oracle") {
  for (const char* name : {"tanh", "algebraic", "smoothstep"}) {
    CAPTURE(name);
    const auto V = PointPotential::duality_preserving(MollifierProfile::make(name), 0.05, 0.3);
    const double k = 1.3, x0 = 1.0;
    const auto [y, dy] = rk4_shoot(V, k, x0, 40000);
    const WaveSolution s = solve_odd(V, k, x0);
    CHECK(s.raw_value_at_x0 == Approx(y).epsilon(1e-8));
    CHECK(s.psi.back() == Approx(1.0));
    CHECK(s.dpsi.back() * s.raw_value_at_x0 == Approx(dy).epsilon(1e-8));
  }
}

TEST_CASE("k = 0 odd solution is x + beta sigma_a(x) for every profile") {
  for (const char* name : {"tanh", "algebraic", "smoothstep"})
    for (double beta : {0.1, 0.5, 2.0}) {
      CAPTURE(name);
      CAPTURE(beta);
      const auto prof = MollifierProfile::make(name);
      const double a = 0.02, x0 = 1.0;
      SolveOptions opt;
      opt.tol = 1e-12;
      const WaveSolution s = solve_odd(PointPotential::duality_preserving(prof, a, beta), 0.0, x0, opt);
      const double norm = x0 + beta * prof.sigma(x0 / a);
      double worst = 0.0;
      for (std::size_t i = 1; i < s.x.size(); ++i) {
        const double exact = (s.x[i] + beta * prof.sigma(s.x[i] / a)) / norm;
        worst = std::max(worst, std::abs(s.psi[i] / exact - 1.0));
      }
      CHECK(worst < 1e-9);
    }
}

TEST_CASE("free-wave fit recovers the jump of the closed-form solution") {
  const ClosedJumpSolution c{1.7, 0.4};
  std::vector<double> x, psi;
  for (int i = 0; i <= 400; ++i) {
    x.push_back(0.2 + 0.002 * i);
    psi.push_back(3.0 * c(x.back()));
  }
  const JumpReport j = fit_free_wave(x, psi, c.k, x.front(), x.back());
  CHECK(j.beta_eff == Approx(0.4).epsilon(1e-12));
  CHECK(j.P == Approx(3.0).epsilon(1e-12));
  CHECK(j.fit_residual < 1e-12);
  CHECK(c(-0.3) == Approx(-c(0.3)));
  CHECK(c(1e-14) - c(-1e-14) == Approx(2.0 * c.beta * c.derivative(0.0)).epsilon(1e-9));
}

TEST_CASE("effective jump converges to beta linearly in a") {
  PotentialTemplate tpl;
  tpl.profile = MollifierProfile::make("tanh");
  tpl.beta = 0.5;
  const double x0 = choose_x0(tpl, 1.0, 0.1);
  const SweepResult r = sweep_a(tpl, 1.0, x0, {0.1, 0.03, 0.01, 0.003});
  for (const auto& row : r.rows) REQUIRE(row.ok);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].rel_error < r.rows[i - 1].rel_error);
  CHECK(r.fitted_order == Approx(1.0).epsilon(0.1));
  CHECK(r.rows.back().rel_error < 0.01);
}

TEST_CASE("Cheon-Shigehara comb realizes the same jump") {
  PotentialTemplate tpl;
  tpl.kind = PotentialKind::CheonShigehara;
  tpl.beta = 0.5;
  const double x0 = choose_x0(tpl, 1.0, 0.1);
  const SweepResult r = sweep_a(tpl, 1.0, x0, {0.1, 0.01, 0.001});
  for (const auto& row : r.rows) REQUIRE(row.ok);
  CHECK(r.rows[2].rel_error < r.rows[1].rel_error);
  CHECK(r.rows[2].rel_error < 0.05);
}

TEST_CASE("jump extraction needs a free region") {
  const auto V = PointPotential::duality_preserving(MollifierProfile::make("algebraic"), 0.1, 0.5);
  const WaveSolution s = solve_odd(V, 1.0, 0.3);
  try {
    extract_jump(s);
    FAIL("expected NoFreeRegion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFreeRegion);
  }
}

TEST_CASE("zero mode: Wronskian with the k = 0 odd solution is constant") {
  const auto V = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.01, 0.5);
  const WaveSolution s = solve_odd(V, 0.0, 1.0);
  const ZeroModeSolution z = solve_even_zero_mode(V, 1.0, s.x);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double w = s.dpsi[i] * z.phi.psi[i] - s.psi[i] * z.phi.dpsi[i];
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  CHECK((hi - lo) / std::abs(hi) < 1e-10);
  CHECK(z.ode_residual < 1e-6);
}

TEST_CASE("zero mode: I_a approaches -1/beta and phi0 approaches -1 away from the core") {
  const auto prof = MollifierProfile::make("tanh");
  const double beta = 0.5;
  double prev = INFINITY;
  for (double a : {1e-1, 1e-2, 1e-3}) {
    const ZeroModeSolution z = solve_even_zero_mode(PointPotential::duality_preserving(prof, a, beta), 0.5);
    const double err = std::abs(z.I.back() + 1.0 / beta);
    CHECK(err < prev);
    prev = err;
    if (a == 1e-3) {
      CHECK(z.I.back() == Approx(-2.0).epsilon(0.01));
      CHECK(z.phi.psi.back() == Approx(-1.0).epsilon(0.01));
    }
  }
}

TEST_CASE("odd solution satisfies its integral representation") {
  const auto V = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.01, 0.5);
  CHECK(self_consistent_residual(solve_odd(V, 1.0, 1.0)) < 1e-8);
}

TEST_CASE("odd shooting value matches the unnormalized endpoint") {
  const auto V = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.05, 0.2);
  CHECK(odd_shooting_value(V, 2.0, 1.5) == Approx(solve_odd(V, 2.0, 1.5).raw_value_at_x0).epsilon(1e-8));
}

TEST_CASE("invalid inputs") {
  const auto prof = MollifierProfile::make("tanh");
  const auto V = PointPotential::duality_preserving(prof, 0.05, 0.2);
  CHECK_THROWS_AS(solve_odd(V, 1.0, -1.0), Error);
  CHECK_THROWS_AS(solve_odd_on(V, 1.0, {0.0, 0.5, 0.4}), Error);
  const SweepResult r = sweep_a(PotentialTemplate{}, 1.0, 1.0, {0.1});
  CHECK_FALSE(r.rows.at(0).ok);
  CHECK_FALSE(r.rows.at(0).error.empty());
}
