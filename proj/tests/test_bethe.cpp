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

#include "bethe.hpp"
#include "doctest.h"
#include "errors.hpp"

using namespace dualreg;
using doctest::Approx;
using std::numbers::pi;

namespace {

// Plain fixed-point iteration of the Bethe equations; contracts for c >> N/L.
std::vector<double> fixed_point(int N, double L, double c) {
  std::vector<double> k(N);
  for (int j = 0; j < N; ++j) k[j] = 2 * pi * (j - 0.5 * (N - 1)) / L;
  for (int it = 0; it < 200; ++it) {
    std::vector<double> next(N);
    for (int j = 0; j < N; ++j) {
      double s = 2 * pi * (j - 0.5 * (N - 1));
      for (int l = 0; l < N; ++l) s -= 2 * std::atan((k[j] - k[l]) / c);
      next[j] = s / L;
    }
    k = next;
  }
  return k;
}

double tonks_density(int N, double L) {
  const double n = N / L;
  return pi * pi * n * n * n / 3 * (1 - 1.0 / (N * N));
}

}  // namespace

TEST_CASE("Newton solution matches fixed-point iteration at strong coupling") {
  const BetheState s = solve_ground(8, 8.0, 100.0);
  const auto ref = fixed_point(8, 8.0, 100.0);
  for (int j = 0; j < 8; ++j) CHECK(s.rapidities[j] == Approx(ref[j]).epsilon(1e-12));
  CHECK(s.residual < 1e-12);
}

TEST_CASE("single particle and hard-core limit") {
  CHECK(solve_ground(1, 3.0, 0.5).energy() == Approx(0.0).scale(1.0));
  for (int N : {4, 7}) {
    const BetheState s = solve_ground(N, 5.0, 1e9);
    CHECK(s.energy_density() == Approx(tonks_density(N, 5.0)).epsilon(1e-8));
  }
}

TEST_CASE("ground state is symmetric and its energy rises with c") {
  double prev = 0.0;
  for (double c : {0.1, 0.5, 2.0, 10.0, 100.0}) {
    CAPTURE(c);
    const BetheState s = solve_ground(10, 10.0, c);
    CHECK(s.residual < 1e-10);
    for (int j = 0; j < 10; ++j) CHECK(s.rapidities[j] == Approx(-s.rapidities[9 - j]).scale(1.0));
    CHECK(std::is_sorted(s.rapidities.begin(), s.rapidities.end()));
    CHECK(s.energy_density() > prev);
    CHECK(s.energy_density() < tonks_density(10, 10.0));
    prev = s.energy_density();
  }
}

TEST_CASE("weak coupling approaches the mean-field energy") {
  // E/L -> c n^2 (1 - 1/N) for c L << 1.
  const BetheState s = solve_ground(4, 2.0, 1e-4);
  CHECK(s.energy_density() == Approx(1e-4 * 4.0 * 0.75).epsilon(1e-3));
}

TEST_CASE("strong-coupling fit") {
  std::vector<double> cs;
  for (int i = 0; i <= 8; ++i) cs.push_back(1e2 * std::pow(1e2, i / 8.0));
  const StrongCouplingFit f = strong_coupling_fit(16, 16.0, cs);
  // The omitted 1/c^3 term biases e0 slightly.
  CHECK(f.e0 == Approx(tonks_density(16, 16.0)).epsilon(1e-6));
  CHECK(f.p == Approx(-4.0).epsilon(0.01));
  CHECK(f.q == Approx(12.0).epsilon(0.05));
  CHECK(f.rel_rms < 1e-6);
  CHECK(f.residual.size() == cs.size());
  CHECK_THROWS_AS(strong_coupling_fit(16, 16.0, {100, 200, 300}), Error);
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(solve_ground(0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(solve_ground(2, -1.0, 1.0), Error);
  CHECK_THROWS_AS(solve_ground(2, 1.0, 0.0), Error);
}
