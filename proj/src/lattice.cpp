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
#include <map>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/math/tools/roots.hpp>

#include "errors.hpp"
#include "manybody.hpp"
#include "solver.hpp"

namespace dualreg {

using std::numbers::pi;

namespace {

int wrap(int n, int M) {
  n %= M;
  return n < 0 ? n + M : n;
}

double sin2_half(int j, int M) { return sqr(std::sin(pi * j / M)); }

void require_potential(const PointPotential& p) {
  require(p.kind() == PotentialKind::DualityPreserving || p.kind() == PotentialKind::CheonShigehara,
          std::string("many-body code needs a pair potential, got ") + potential_kind_name(p.kind()));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Fock state as sorted mode indices in [0, M).
using Occupation = std::vector<int>;

// c(k): returns false if k is empty.
bool annihilate(Occupation& s, int k, int& sign) {
  auto it = std::lower_bound(s.begin(), s.end(), k);
  if (it == s.end() || *it != k) return false;
  if ((it - s.begin()) % 2) sign = -sign;
  s.erase(it);
  return true;
}

bool create(Occupation& s, int k, int& sign) {
  auto it = std::lower_bound(s.begin(), s.end(), k);
  if (it != s.end() && *it == k) return false;
  if ((it - s.begin()) % 2) sign = -sign;
  s.insert(it, k);
  return true;
}

void enumerate_sector(int M, int N, int P, Occupation& cur, int start, int sum, std::vector<Occupation>& out) {
  if (static_cast<int>(cur.size()) == N) {
    if (sum % M == P) out.push_back(cur);
    return;
  }
  for (int k = start; k <= M - (N - static_cast<int>(cur.size())); ++k) {
    cur.push_back(k);
    enumerate_sector(M, N, P, cur, k + 1, (sum + k) % M, out);
    cur.pop_back();
  }
}

// Lanczos with full reorthogonalization; returns the lowest n eigenvalues.
std::vector<double> lanczos_lowest(const Eigen::SparseMatrix<double>& H, int n, double tol) {
  const Eigen::Index dim = H.rows();
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = u(rng);
  v.normalize();
  const Eigen::Index m_max = std::min<Eigen::Index>(dim, std::max(300, 8 * n));
  Eigen::MatrixXd V(dim, m_max);
  std::vector<double> alpha, beta;
  double hnorm = 0.0;
  for (int k = 0; k < H.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(H, k); it; ++it) hnorm = std::max(hnorm, std::abs(it.value()));
  hnorm *= std::sqrt(static_cast<double>(dim));
  std::vector<double> ritz;
  for (Eigen::Index j = 0; j < m_max; ++j) {
    V.col(j) = v;
    Eigen::VectorXd w = H * v;
    alpha.push_back(v.dot(w));
    for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    const double b = w.norm();
    const bool exhausted = b < 1e-12 * std::max(1.0, hnorm) || j + 1 == m_max;
    if ((j + 1) % 10 == 0 || exhausted) {
      const Eigen::Index m = j + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      const int got = static_cast<int>(std::min<Eigen::Index>(n, m));
      bool converged = got == n;
      for (int i = 0; i < got && converged; ++i)
        converged = std::abs(b * es.eigenvectors()(m - 1, i)) < tol * std::max(1.0, hnorm);
      if (converged || exhausted) {
        ritz.assign(es.eigenvalues().data(), es.eigenvalues().data() + got);
        if (!converged && !(b < 1e-12 * std::max(1.0, hnorm)))
          fail(ErrorCode::NoConvergence, "Lanczos: lowest " + std::to_string(n) + " Ritz values not converged after " +
                                             std::to_string(m) + " steps");
        return ritz;
      }
    }
    beta.push_back(b);
    v = w / b;
  }
  return ritz;
}

}  // namespace

LatticeSpec make_lattice(int M, double L, int N) {
  require(M >= 2 && M % 2 == 0, "lattice: M must be even and >= 2");
  require(L > 0.0 && std::isfinite(L), "lattice: L must be positive");
  require(N > 0 && N < M, "lattice: need 0 < N < M");
  return LatticeSpec{M, L, N};
}

FreeState make_state(const LatticeSpec& spec, std::vector<int> modes) {
  require(static_cast<int>(modes.size()) == spec.N, "state: need exactly N modes");
  std::sort(modes.begin(), modes.end());
  int sum = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    require(modes[i] >= -spec.M / 2 && modes[i] < spec.M / 2, "state: mode outside [-M/2, M/2)");
    require(i == 0 || modes[i] != modes[i - 1], "state: modes must be distinct");
    sum += modes[i];
  }
  require(wrap(sum, spec.M) == 0, "state: total momentum must vanish");
  return FreeState{std::move(modes)};
}

FreeState ground_zero_momentum(const LatticeSpec& spec) {
  std::vector<int> m;
  if (spec.N % 2) m.push_back(0);
  for (int j = 1; static_cast<int>(m.size()) < spec.N; ++j) {
    m.push_back(j);
    m.push_back(-j);
  }
  return make_state(spec, m);
}

std::vector<double> lattice_transform(const LatticeSpec& spec, const PointPotential& p) {
  require_potential(p);
  const int M = spec.M;
  const double kappa = spec.kappa();
  std::vector<double> v(M / 2 + 1);
  for (int n = 0; n <= M / 2; ++n) v[n] = p(n * kappa);
  std::vector<double> out(M);
  for (int j = 0; j < M; ++j) {
    CompensatedSum s;
    s.add(v[0]);
    for (int n = 1; n < M / 2; ++n) s.add(2.0 * v[n] * std::cos(2.0 * pi * wrap(j * n, M) / M));
    s.add(v[M / 2] * ((j % 2) ? -1.0 : 1.0));
    out[j] = kappa * s.value();
  }
  return out;
}

EnergyBreakdown lattice_pt(const LatticeSpec& spec, const FreeState& state, const PointPotential& p) {
  require_potential(p);
  const int M = spec.M;
  const double L = spec.L, kappa = spec.kappa();
  make_state(spec, state.modes);
  EnergyBreakdown e;
  e.a = p.a();
  e.beta = p.beta();
  if (p.a() < 10.0 * kappa)
    e.warnings.push_back("a = " + std::to_string(p.a()) + " is below 10 kappa = " + std::to_string(10.0 * kappa) +
                         "; the potential is not resolved on the lattice");
  const std::vector<double> vt = lattice_transform(spec, p);
  std::vector<char> occupied(M, 0);
  std::vector<int> idx;
  for (int n : state.modes) {
    idx.push_back(wrap(n, M));
    occupied[idx.back()] = 1;
  }
  double vmax = 0.0;
  for (double x : vt) vmax = std::max(vmax, std::abs(x));

  CompensatedSum e0, e1, e2;
  for (int l : idx) e0.add(sin2_half(l, M));
  e.E0 = 4.0 / (kappa * kappa * L) * e0.value();
  for (int l : idx)
    for (int m : idx) e1.add(vt[0] - vt[wrap(l - m, M)]);
  e.E1 = e1.value() / (L * L);
  for (int l : idx)
    for (int m : idx)
      for (int nu = 0; nu < M; ++nu) {
        const int lp = wrap(l + nu, M), mp = wrap(m - nu, M);
        if (occupied[lp] || occupied[mp]) continue;
        const double num = vt[wrap(l - m + nu, M)] - vt[nu];
        if (std::abs(num) <= 1e-13 * vmax) continue;
        const double den = sin2_half(l, M) + sin2_half(m, M) - sin2_half(lp, M) - sin2_half(mp, M);
        if (std::abs(den) < 1e-13)
          fail(ErrorCode::DegenerateDenominator,
               "lattice E2: zero energy denominator at (lambda, mu, nu) = (" + std::to_string(l) + ", " +
                   std::to_string(m) + ", " + std::to_string(nu) + ") x 2 pi / " + std::to_string(M));
        e2.add(num * num / den);
      }
  e.E2 = kappa * kappa / (4.0 * L * L * L) * e2.value();
  return e;
}

EDResult exact_diag(const LatticeSpec& spec, const PointPotential& p, int n_levels, int momentum) {
  require_potential(p);
  require(n_levels >= 1, "exact_diag: n_levels must be positive");
  const int M = spec.M, N = spec.N;
  const double L = spec.L, kappa = spec.kappa();
  const double full = binomial(M, N);
  if (full > 2e6)
    fail(ErrorCode::DimensionTooLarge,
         "exact_diag: binomial(" + std::to_string(M) + ", " + std::to_string(N) + ") exceeds 2e6");
  EDResult res;
  res.momentum = wrap(momentum, M);
  std::vector<Occupation> basis;
  Occupation cur;
  enumerate_sector(M, N, res.momentum, cur, 0, 0, basis);
  res.dimension = basis.size();
  require(!basis.empty(), "exact_diag: empty momentum sector");
  std::map<Occupation, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<int>(i));

  const std::vector<double> vt = lattice_transform(spec, p);
  const double e_unit = 4.0 / (L * kappa * kappa);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Occupation& s = basis[col];
    double diag = 0.0;
    for (int k : s) diag += e_unit * sin2_half(k, M);
    trip.emplace_back(col, col, diag);
    for (int k4 : s)
      for (int k3 : s) {
        if (k3 == k4) continue;
        Occupation t = s;
        int sign = 1;
        annihilate(t, k4, sign);
        annihilate(t, k3, sign);
        for (int k1 = 0; k1 < M; ++k1) {
          const int k2 = wrap(k3 + k4 - k1, M);
          if (k1 == k2) continue;
          Occupation u = t;
          int sg = sign;
          if (!create(u, k2, sg) || !create(u, k1, sg)) continue;
          const double amp = vt[wrap(k1 - k4, M)] / (L * L);
          if (amp == 0.0) continue;
          trip.emplace_back(index.at(u), col, sg * amp);
        }
      }
  }
  Eigen::SparseMatrix<double> H(res.dimension, res.dimension);
  H.setFromTriplets(trip.begin(), trip.end());
  const int want = std::min<int>(n_levels, static_cast<int>(res.dimension));
  if (res.dimension <= 600) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(H), Eigen::EigenvaluesOnly);
    res.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + want);
  } else {
    res.iterative = true;
    res.energies = lanczos_lowest(H, want, 1e-13);
  }
  return res;
}

double continuum_pair_energy(const PointPotential& p, double L, double tol) {
  require_potential(p);
  require(L > 0.0, "continuum_pair_energy: L must be positive");
  const double x0 = 0.5 * L;
  SolveOptions opt;
  opt.tol = tol;
  const auto f = [&](double k) { return odd_shooting_value(p, k, x0, opt); };
  const double k0 = 2.0 * pi / L;
  double lo = 0.2 * k0, flo = f(lo);
  for (double hi = lo + 0.05 * k0; hi < 3.0 * k0; hi += 0.05 * k0) {
    const double fhi = f(hi);
    if ((flo > 0) != (fhi > 0)) {
      boost::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(
          f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50), iters);
      const double k = 0.5 * (r.first + r.second);
      return 2.0 * k * k / L;
    }
    lo = hi;
    flo = fhi;
  }
  fail(ErrorCode::NoConvergence, "continuum_pair_energy: no node of psi(L/2) below 3 x 2 pi / L");
}

}  // namespace dualreg
