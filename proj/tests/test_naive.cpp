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
using std::numbers::pi;

namespace {

// Closed-form principal value of int_{-1}^x (a^2 + y^2) / (a^2 + y^2 - b) dy, b = 2 a beta / pi > a^2.
double lorentzian_oracle(double a, double beta, double x) {
  const double b = 2 * a * beta / pi, r = std::sqrt(b - a * a);
  auto L = [&](double y) { return std::log(std::abs((y - r) / (y + r))); };
  return x + 1 + b / (2 * r) * (L(x) - L(-1.0));
}

}  // namespace

TEST_CASE("naive delta' regularization loses the jump") {
  const auto prof = MollifierProfile::make("tanh");
  const double beta = 0.1, k = 1.0, x0 = 1.0;
  double prev = INFINITY;
  for (double a : {1e-2, 1e-3}) {
    const NaiveResult nr = solve_naive_delta_prime(prof, a, beta, k, x0);
    CHECK(std::abs(nr.jump.beta_eff) < prev);
    prev = std::abs(nr.jump.beta_eff);
    // beta sigma_a'(0) = beta / a > 1: one coefficient zero on the half line.
    REQUIRE(nr.singular_points.size() == 1);
    CHECK(prof.d1(nr.singular_points[0] / a) * beta / a == Approx(1.0));
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("naive equation without coefficient zeros") {
  const auto prof = MollifierProfile::make("tanh");
  const NaiveResult nr = solve_naive_delta_prime(prof, 0.1, 0.05, 1.0, 4.0);
  CHECK(nr.singular_points.empty());
  CHECK(nr.jump.valid);
}

TEST_CASE("linearised naive jump is linear in beta and tends to beta") {
  const auto prof = MollifierProfile::make("tanh");
  const double k = 1.0, x0 = 1.0;
  const double j1 = naive_first_order_beta_eff(prof, 1e-2, 0.1, k, x0);
  const double j2 = naive_first_order_beta_eff(prof, 1e-2, 0.2, k, x0);
  CHECK(j2 == Approx(2 * j1).epsilon(1e-9));
  const double j3 = naive_first_order_beta_eff(prof, 1e-3, 0.1, k, x0);
  CHECK(std::abs(j3 / 0.1 - 1) < std::abs(j1 / 0.1 - 1));
  CHECK(j3 == Approx(0.1).epsilon(0.02));
}

TEST_CASE("Lorentzian toy matches the closed-form principal value") {
  const double a = 0.01, beta = 0.5;
  const double r = std::sqrt(2 * a * beta / pi - a * a);
  std::vector<double> xs = {-0.5, -0.2, -0.05, 0.0, 0.03, 0.05, 0.3, 0.9};
  const LorentzianToyResult t = lorentzian_toy(a, beta, xs, 0.05);
  REQUIRE(t.f.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CAPTURE(xs[i]);
    REQUIRE(std::abs(std::abs(xs[i]) - r) > 1e-3);
    CHECK(t.f[i] == Approx(lorentzian_oracle(a, beta, xs[i])).epsilon(1e-7));
    CHECK(t.f_first_order[i] == Approx(xs[i] + beta * (2 / pi) * std::atan(xs[i] / a) + 1));
  }
  CHECK(t.jump == Approx(lorentzian_oracle(a, beta, 0.05) - lorentzian_oracle(a, beta, -0.05) - 0.1).epsilon(1e-7));
  CHECK(t.jump_first_order == Approx(2 * beta * (2 / pi) * std::atan(5.0)));
}

TEST_CASE("Lorentzian toy jump vanishes like sqrt(a)") {
  const double beta = 0.5;
  const double j2 = lorentzian_toy(1e-2, beta, {0.5}).jump;
  const double j4 = lorentzian_toy(1e-4, beta, {0.5}).jump;
  CHECK(std::abs(j4) < 0.2 * std::abs(j2));
  CHECK(lorentzian_toy(1e-4, beta, {0.5}).jump_first_order == Approx(2 * beta).epsilon(0.01));
}
