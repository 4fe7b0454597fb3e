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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "doctest.h"
#include "errors.hpp"
#include "manybody.hpp"

using namespace dualreg;
using doctest::Approx;
using std::numbers::pi;

namespace {

int wrap(int n, int M) { return ((n % M) + M) % M; }

// Position-space oracle: N antisymmetrized particles on M sites with nearest-neighbour
// hopping and the pair potential summed over ordered pairs at minimum image distance.
std::vector<double> position_space_spectrum(const LatticeSpec& spec, const PointPotential& p) {
  const int M = spec.M, N = spec.N;
  const double kappa = spec.kappa();
  std::vector<std::vector<int>> basis;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == N) {
      basis.push_back(cur);
      return;
    }
    for (int s = start; s < M; ++s) {
      cur.push_back(s);
      self(self, s + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  auto find = [&](const std::vector<int>& t) {
    return static_cast<int>(std::lower_bound(basis.begin(), basis.end(), t) - basis.begin());
  };
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    const auto& s = basis[c];
    double diag = 2.0 * N / (kappa * kappa);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (i != j) {
          const int d = std::abs(s[i] - s[j]);
          diag += p(std::min(d, M - d) * kappa);
        }
    H(c, c) += diag;
    for (int i = 0; i < N; ++i)
      for (int step : {-1, 1}) {
        std::vector<int> t = s;
        t[i] = wrap(s[i] + step, M);
        if (std::count(t.begin(), t.end(), t[i]) > 1) continue;
        // Sign of the permutation that sorts t.
        int inversions = 0;
        for (int x = 0; x < N; ++x)
          for (int y = x + 1; y < N; ++y) inversions += t[x] > t[y];
        std::sort(t.begin(), t.end());
        H(find(t), c) += (inversions % 2 ? 1.0 : -1.0) / (kappa * kappa);
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  for (double& e : out) e /= spec.L;
  return out;
}

std::vector<double> momentum_space_spectrum(const LatticeSpec& spec, const PointPotential& p) {
  std::vector<double> all;
  for (int P = 0; P < spec.M; ++P) {
    const EDResult r = exact_diag(spec, p, 100000, P);
    CHECK_FALSE(r.iterative);
    all.insert(all.end(), r.energies.begin(), r.energies.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST_CASE("lattice transform equals a direct DFT of the sampled potential") {
  const LatticeSpec spec = make_lattice(20, 5.0, 2);
  const auto p = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.4, 0.3);
  const auto vt = lattice_transform(spec, p);
  for (int j = 0; j < spec.M; ++j) {
    std::complex<double> s = 0;
    for (int n = 0; n < spec.M; ++n) {
      const int d = std::min(n, spec.M - n);
      s += p(d * spec.kappa()) * std::polar(1.0, 2 * pi * j * n / spec.M);
    }
    CHECK(vt[j] == Approx(spec.kappa() * s.real()).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-9 * std::abs(s));
  }
}

TEST_CASE("momentum-basis diagonalization reproduces the position-space spectrum") {
  const auto tanh = MollifierProfile::make("tanh");
  struct Case {
    int M, N;
    double L;
    PointPotential p;
  };
  const Case cases[] = {
      {12, 2, 6.0, PointPotential::duality_preserving(tanh, 1.0, 0.3)},
      {10, 3, 5.0, PointPotential::duality_preserving(MollifierProfile::make("algebraic"), 0.8, 0.5)},
      {12, 2, 6.0, PointPotential::cheon_shigehara(1.0, 0.4, 0.5)},
  };
  for (const Case& c : cases) {
    CAPTURE(c.M);
    CAPTURE(c.N);
    const LatticeSpec spec = make_lattice(c.M, c.L, c.N);
    const auto ref = position_space_spectrum(spec, c.p);
    const auto got = momentum_space_spectrum(spec, c.p);
    REQUIRE(ref.size() == got.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - got[i]));
    CHECK(worst < 1e-9 * std::max(1.0, std::abs(ref.back())));
  }
}

TEST_CASE("free ground state energy and first-order shift") {
  const LatticeSpec spec = make_lattice(32, 8.0, 3);
  const auto p = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 1.0, 1e-3);
  const EnergyBreakdown e = lattice_pt(spec, ground_zero_momentum(spec), p);
  const double kappa = spec.kappa();
  const double e0 = 4.0 / (kappa * kappa * spec.L) * 2 * std::pow(std::sin(pi / 32), 2);
  CHECK(e.E0 == Approx(e0).epsilon(1e-14));
  const EDResult ed = exact_diag(spec, p, 1);
  // beta = 1e-3: second order is already small, third order negligible.
  CHECK(ed.energies[0] == Approx(e.total()).epsilon(1e-9));
  CHECK(std::abs(ed.energies[0] - e.E0 - e.E1) < 10 * std::abs(e.E2));
}

TEST_CASE("perturbation theory error is third order in beta when beta << a") {
  const LatticeSpec spec = make_lattice(32, 8.0, 2);
  const auto tanh = MollifierProfile::make("tanh");
  std::vector<double> betas = {0.04, 0.02, 0.01}, res;
  for (double beta : betas) {
    const auto p = PointPotential::duality_preserving(tanh, 1.0, beta);
    const EDResult ed = exact_diag(spec, p, 1);
    res.push_back(std::abs(ed.energies[0] - lattice_pt(spec, ground_zero_momentum(spec), p).total()));
  }
  CHECK(loglog_slope(betas, res) == Approx(3.0).epsilon(0.05));
}

TEST_CASE("vanishing energy denominator is reported") {
  const LatticeSpec spec = make_lattice(12, 6.0, 3);
  const auto p = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 1.0, 0.2);
  try {
    lattice_pt(spec, make_state(spec, {-6, -5, -1}), p);
    FAIL("expected DegenerateDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("state validation") {
  const LatticeSpec spec = make_lattice(12, 6.0, 3);
  CHECK_THROWS_AS(make_state(spec, {0, 1, 2}), Error);
  CHECK_THROWS_AS(make_state(spec, {0, 1}), Error);
  CHECK_THROWS_AS(make_state(spec, {0, 6, 6}), Error);
  CHECK_THROWS_AS(make_lattice(11, 1.0, 2), Error);
  CHECK(ground_zero_momentum(spec).modes == std::vector<int>{-1, 0, 1});
  const LatticeSpec big = make_lattice(400, 8.0, 4);
  const auto p = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.5, 0.2);
  try {
    exact_diag(big, p, 1);
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionTooLarge);
  }
}

TEST_CASE("Lanczos ground state in a large sector") {
  const LatticeSpec spec = make_lattice(64, 8.0, 3);
  const auto p = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.5, 1e-3);
  const EDResult r = exact_diag(spec, p, 3);
  REQUIRE(r.iterative);
  REQUIRE(r.dimension > 600);
  CHECK(std::is_sorted(r.energies.begin(), r.energies.end()));
  // At beta = 1e-3 second-order perturbation theory is good to ~beta^3.
  const EnergyBreakdown e = lattice_pt(spec, ground_zero_momentum(spec), p);
  CHECK(r.energies[0] == Approx(e.total()).epsilon(1e-9));
}

TEST_CASE("two-particle lattice ground state approaches the continuum") {
  const double L = 8.0;
  const auto p = PointPotential::duality_preserving(MollifierProfile::make("tanh"), 0.5, 0.3);
  const double cont = continuum_pair_energy(p, L);
  std::vector<double> err;
  for (int M : {32, 64, 128}) {
    const LatticeSpec spec = make_lattice(M, L, 2);
    err.push_back(std::abs(exact_diag(spec, p, 1).energies[0] / cont - 1));
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
  CHECK(err[2] < 1e-2);
}
