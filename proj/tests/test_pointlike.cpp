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
#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "pointlike.hpp"

using namespace dualreg;
using doctest::Approx;

namespace {

void check_same(const InteractionMatrix& x, const InteractionMatrix& y) {
  CHECK(x.a == Approx(y.a));
  CHECK(x.b == Approx(y.b));
  CHECK(x.c == Approx(y.c));
  CHECK(x.d == Approx(y.d));
}

}  // namespace

TEST_CASE("unimodularity is enforced") {
  CHECK_NOTHROW(InteractionMatrix::make(0.3, 2.0, 1.0, 1.0, 1.0));
  try {
    InteractionMatrix::make(0.0, 2.0, 0.0, 0.0, 1.0);
    FAIL("expected NotUnimodular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnimodular);
  }
  CHECK_THROWS_AS(classify({0.0, 1.0, 1.0, 1.0, 1.0}), Error);
}

TEST_CASE("group structure: inverse and additive couplings") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double b1 = u(rng), b2 = u(rng);
    check_same(InteractionMatrix::fermion_free(b1) * InteractionMatrix::fermion_free(b2),
               InteractionMatrix::fermion_free(b1 + b2));
    check_same(InteractionMatrix::pure_boson(b1) * InteractionMatrix::pure_boson(b2),
               InteractionMatrix::pure_boson(b1 + b2));
    const auto m = InteractionMatrix::make(u(rng), 1.0 + b1 * b2, b1, b2, 1.0);
    const auto id = m * m.inverse();
    check_same(id, InteractionMatrix::identity());
    CHECK(id.theta == Approx(0.0));
  }
}

TEST_CASE("classification round trip") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double g = u(rng), b = u(rng);
    const Classification cases[] = {
        {InteractionClass::PureBoson, g, 0.0},
        {InteractionClass::FermionTransparentForBosons, 0.0, b},
        {InteractionClass::FermionHardcoreBoson, INFINITY, b},
        {InteractionClass::GeneralSymmetric, g, b * (g * b > 0.9 && g * b < 1.1 ? 0.5 : 1.0)},
    };
    for (const auto& c : cases) {
      const Classification r = classify(matrix_of(c));
      CHECK(r.kind == c.kind);
      if (std::isfinite(c.gamma)) CHECK(r.gamma == Approx(c.gamma).epsilon(1e-10));
      CHECK(r.beta == Approx(c.beta).epsilon(1e-10));
    }
  }
}

TEST_CASE("an overall phase of -1 does not change the class") {
  const auto m = InteractionMatrix::fermion_free(0.7);
  const InteractionMatrix flipped{std::numbers::pi, -m.a, -m.b, -m.c, -m.d};
  const Classification c = classify(flipped);
  CHECK(c.kind == InteractionClass::FermionTransparentForBosons);
  CHECK(c.beta == Approx(0.7));
  CHECK(classify(InteractionMatrix::make(0.4, 1.0, 0.0, 0.0, 1.0)).kind == InteractionClass::General);
}

TEST_CASE("fermionic connection: value jump 2 beta psi' on odd data, even data untouched") {
  const double beta = 0.35;
  const auto m = InteractionMatrix::fermion_free(beta);
  // Odd data: psi(0+) = -psi(0-), psi'(0+) = psi'(0-). Solve for psi(0-).
  const double dpsi = 1.3, psi_minus = -beta * dpsi;
  const auto [p, dp] = apply_connection(m, psi_minus, dpsi);
  CHECK(p.real() == Approx(-psi_minus));
  CHECK(dp.real() == Approx(dpsi));
  CHECK(p.real() - psi_minus == Approx(2.0 * beta * dpsi));
  // Even data with psi' = 0 passes through unchanged.
  const auto [pe, dpe] = apply_connection(m, 0.8, 0.0);
  CHECK(pe.real() == Approx(0.8));
  CHECK(dpe.real() == Approx(0.0));
  const JumpParameters j = jump_parameters(m);
  CHECK(j.beta == Approx(beta));
  CHECK(j.gamma == Approx(0.0));
}

TEST_CASE("hard-core variant: even data vanish at the origin, odd data jump as before") {
  const double beta = 0.6;
  const auto m = InteractionMatrix::fermion_hardcore(beta);
  CHECK(m.determinant() == Approx(1.0));
  const double dpsi = 0.9, psi_minus = -beta * dpsi;
  const auto [p, dp] = apply_connection(m, psi_minus, dpsi);
  CHECK(p.real() == Approx(-psi_minus));
  CHECK(dp.real() == Approx(dpsi));
  // Even data: psi(0+) = psi(0-) forces psi(0) = 0.
  const auto [pe, dpe] = apply_connection(m, 0.0, -1.0);
  CHECK(pe.real() == Approx(0.0));
  CHECK(dpe.real() == Approx(1.0));
  CHECK_THROWS_AS(InteractionMatrix::fermion_hardcore(0.0), Error);
}

TEST_CASE("bosonic connection: derivative jump 2 gamma psi") {
  const double g = 1.7;
  const auto m = InteractionMatrix::pure_boson(g);
  // Even data: psi'(0+) = -psi'(0-).
  const double psi = 0.5, dpsi_minus = -g * psi;
  const auto [p, dp] = apply_connection(m, psi, dpsi_minus);
  CHECK(p.real() == Approx(psi));
  CHECK(dp.real() - dpsi_minus == Approx(2.0 * g * psi));
  CHECK(std::string(interaction_class_name(classify(m).kind)) == "PureBoson");
}
