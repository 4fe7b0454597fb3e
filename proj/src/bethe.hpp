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

// Lieb-Liniger ground state on a ring from the Bethe equations
//   k_j L = 2 pi I_j - sum_l 2 atan((k_j - k_l) / c),
// with H = -sum d^2/dx^2 + 2c sum delta(x_i - x_j) and E = sum k_j^2.
// Through the boson-fermion map this is the fermion gas at beta = 2/c.

#pragma once

#include <vector>

namespace dualreg {

struct BetheState {
  int N = 0;
  double L = 0.0;
  double c = 0.0;
  std::vector<double> rapidities;       // increasing
  std::vector<double> quantum_numbers;  // -(N-1)/2, ..., (N-1)/2
  double residual = 0.0;                // max |Bethe equation|
  int iterations = 0;
  double energy() const;
  double energy_density() const { return energy() / L; }
};

struct BetheOptions {
  double tol = 1e-12;
  int max_iter = 100;
  // Couplings below this multiple of the density are reached by continuation.
  double direct_ratio = 8.0;
};

BetheState solve_ground(int N, double L, double c, const BetheOptions& opt = {});

// E/L = e0 (1 + p/c + q/c^2) fitted by least squares over c_list.
struct StrongCouplingFit {
  double e0 = 0.0, p = 0.0, q = 0.0;
  double e0_err = 0.0, p_err = 0.0, q_err = 0.0;
  double rel_rms = 0.0;  // rms residual over e0
  std::vector<double> c;
  std::vector<double> energy_density;
  std::vector<double> residual;
};

StrongCouplingFit strong_coupling_fit(int N, double L, const std::vector<double>& c_list,
                                      double max_rel_rms = 1e-6, const BetheOptions& opt = {});

}  // namespace dualreg
