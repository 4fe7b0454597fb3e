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

#include "pointlike.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace dualreg {

namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double x, double y) { return std::abs(x - y) <= kTol * std::max(1.0, std::abs(y)); }

// Sign of e^{i theta} when it is real, 0 otherwise.
int real_phase(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  if (std::abs(s) > kTol) return 0;
  return c > 0 ? 1 : -1;
}

double ratio_or_inf(double num, double den) { return den == 0.0 ? kInf : num / den; }

}  // namespace

InteractionMatrix InteractionMatrix::make(double theta, double a, double b, double c, double d) {
  InteractionMatrix m{theta, a, b, c, d};
  if (std::abs(m.determinant() - 1.0) > kTol)
    fail(ErrorCode::NotUnimodular, "ad - bc = " + std::to_string(m.determinant()));
  return m;
}

InteractionMatrix InteractionMatrix::pure_boson(double gamma) { return {0.0, 1.0, 0.0, 2.0 * gamma, 1.0}; }
InteractionMatrix InteractionMatrix::fermion_free(double beta) { return {0.0, 1.0, 2.0 * beta, 0.0, 1.0}; }

InteractionMatrix InteractionMatrix::fermion_hardcore(double beta) {
  require(beta != 0.0, "hard-core fermion matrix needs beta != 0");
  return {0.0, -1.0, 0.0, -2.0 / beta, -1.0};
}

InteractionMatrix InteractionMatrix::inverse() const { return {-theta, d, -b, -c, a}; }

InteractionMatrix InteractionMatrix::operator*(const InteractionMatrix& r) const {
  return {theta + r.theta, a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

const char* interaction_class_name(InteractionClass c) {
  switch (c) {
    case InteractionClass::PureBoson: return "PureBoson";
    case InteractionClass::FermionTransparentForBosons: return "FermionTransparentForBosons";
    case InteractionClass::FermionHardcoreBoson: return "FermionHardcoreBoson";
    case InteractionClass::GeneralSymmetric: return "GeneralSymmetric";
    case InteractionClass::General: return "General";
  }
  return "?";
}

JumpParameters jump_parameters(const InteractionMatrix& m) {
  JumpParameters j;
  j.gamma = m.b != 0.0 ? (m.a - 1.0) / m.b : ratio_or_inf(m.c, 1.0 + m.d);
  j.beta = m.a != -1.0 ? m.b / (1.0 + m.a) : ratio_or_inf(m.d - 1.0, m.c);
  if (std::isinf(j.gamma)) j.gamma = kInf;
  if (std::isinf(j.beta)) j.beta = kInf;
  return j;
}

Classification classify(const InteractionMatrix& m0) {
  if (std::abs(m0.determinant() - 1.0) > kTol)
    fail(ErrorCode::NotUnimodular, "ad - bc = " + std::to_string(m0.determinant()));
  const int s = real_phase(m0.theta);
  if (s == 0) return {InteractionClass::General, std::nan(""), std::nan("")};
  const InteractionMatrix m{0.0, s * m0.a, s * m0.b, s * m0.c, s * m0.d};
  const JumpParameters j = jump_parameters(m);
  const bool zero_b = near(m.b, 0.0), zero_c = near(m.c, 0.0);
  if (near(m.a, 1.0) && near(m.d, 1.0) && zero_b && zero_c) return {InteractionClass::GeneralSymmetric, 0.0, 0.0};
  if (near(m.a, 1.0) && near(m.d, 1.0) && zero_b) return {InteractionClass::PureBoson, m.c / 2.0, 0.0};
  if (near(m.a, 1.0) && near(m.d, 1.0) && zero_c) return {InteractionClass::FermionTransparentForBosons, 0.0, m.b / 2.0};
  if (near(m.a, -1.0) && near(m.d, -1.0) && zero_b)
    return {InteractionClass::FermionHardcoreBoson, kInf, zero_c ? kInf : -2.0 / m.c};
  if (near(m.a, m.d)) return {InteractionClass::GeneralSymmetric, j.gamma, j.beta};
  return {InteractionClass::General, j.gamma, j.beta};
}

InteractionMatrix matrix_of(const Classification& c) {
  switch (c.kind) {
    case InteractionClass::PureBoson: return InteractionMatrix::pure_boson(c.gamma);
    case InteractionClass::FermionTransparentForBosons: return InteractionMatrix::fermion_free(c.beta);
    case InteractionClass::FermionHardcoreBoson: return InteractionMatrix::fermion_hardcore(c.beta);
    case InteractionClass::GeneralSymmetric: {
      const double gb = c.gamma * c.beta;
      require(gb != 1.0, "matrix_of: gamma * beta = 1 has no finite matrix");
      return {0.0, (1.0 + gb) / (1.0 - gb), 2.0 * c.beta / (1.0 - gb), 2.0 * c.gamma / (1.0 - gb),
              (1.0 + gb) / (1.0 - gb)};
    }
    case InteractionClass::General: break;
  }
  fail(ErrorCode::InvalidArgument, "matrix_of: General carries no parameters");
}

std::pair<std::complex<double>, std::complex<double>> apply_connection(const InteractionMatrix& m,
                                                                       std::complex<double> psi,
                                                                       std::complex<double> dpsi) {
  const std::complex<double> ph = std::polar(1.0, m.theta);
  return {ph * (m.a * psi + m.b * dpsi), ph * (m.c * psi + m.d * dpsi)};
}

}  // namespace dualreg
