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

// Connection conditions at a point: the 2x2 unimodular interaction matrix
// (with phase), its bosonic/fermionic classification and jump parameters.

#pragma once

#include <complex>
#include <string>
#include <utility>

namespace dualreg {

// (psi_+, psi_+') = e^{i theta} [[a, b], [c, d]] (psi_-, psi_-').
struct InteractionMatrix {
  double theta = 0.0;
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  // Throws NotUnimodular unless |ad - bc - 1| <= 1e-12.
  static InteractionMatrix make(double theta, double a, double b, double c, double d);
  static InteractionMatrix identity() { return {}; }
  // Derivative jump 2 gamma psi, transparent for odd functions.
  static InteractionMatrix pure_boson(double gamma);
  // Value jump 2 beta psi', transparent for even functions.
  static InteractionMatrix fermion_free(double beta);
  // Hard core for even functions, value jump 2 beta psi' for odd ones.
  static InteractionMatrix fermion_hardcore(double beta);

  double determinant() const { return a * d - b * c; }
  InteractionMatrix inverse() const;
  InteractionMatrix operator*(const InteractionMatrix& rhs) const;
};

// psi_-' = h_minus psi_-, psi_+' = h_plus psi_+ (the two sides decouple).
struct SeparatedWall {
  double h_plus = 0.0;
  double h_minus = 0.0;
  std::pair<double, double> derivatives(double psi_minus, double psi_plus) const {
    return {h_minus * psi_minus, h_plus * psi_plus};
  }
};

enum class InteractionClass { PureBoson, FermionTransparentForBosons, FermionHardcoreBoson, GeneralSymmetric, General };

const char* interaction_class_name(InteractionClass c);

// Extended reals: poles are reported as +infinity.
struct JumpParameters {
  double gamma = 0.0;  // psi'(0+) - psi'(0-) = 2 gamma psi(0) on even data
  double beta = 0.0;   // psi(0+) - psi(0-) = 2 beta psi'(0) on odd data
};

struct Classification {
  InteractionClass kind = InteractionClass::General;
  double gamma = 0.0;
  double beta = 0.0;
};

// gamma = (a-1)/b, or c/(1+d) when b = 0; beta = b/(1+a), or (d-1)/c when
// a = -1. Both are the unique values compatible with even and odd data
// respectively; the phase must be real (theta in pi Z) for these to apply.
JumpParameters jump_parameters(const InteractionMatrix& m);

// Precedence: identity (GeneralSymmetric(0, 0)), PureBoson, transparent-for-
// bosons fermion, hard-core fermion, GeneralSymmetric (a = d), General.
Classification classify(const InteractionMatrix& m);

// Inverse of classify on the named families.
InteractionMatrix matrix_of(const Classification& c);

std::pair<std::complex<double>, std::complex<double>> apply_connection(const InteractionMatrix& m,
                                                                       std::complex<double> psi_minus,
                                                                       std::complex<double> dpsi_minus);

}  // namespace dualreg
