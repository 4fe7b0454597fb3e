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

#include "bethe.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "numerics.hpp"

namespace dualreg {

namespace {

using std::numbers::pi;

Eigen::VectorXd bethe_residual(const Eigen::VectorXd& k, const std::vector<double>& I, double L, double c) {
  const Eigen::Index n = k.size();
  Eigen::VectorXd f(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double s = k(j) * L - 2.0 * pi * I[j];
    for (Eigen::Index l = 0; l < n; ++l)
      if (l != j) s += 2.0 * std::atan((k(j) - k(l)) / c);
    f(j) = s;
  }
  return f;
}

Eigen::MatrixXd bethe_jacobian(const Eigen::VectorXd& k, double L, double c) {
  const Eigen::Index n = k.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    J(j, j) = L;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == j) continue;
      const double d = k(j) - k(l);
      const double w = 2.0 * c / (c * c + d * d);
      J(j, j) += w;
      J(j, l) = -w;
    }
  }
  return J;
}

// Damped Newton; returns false if the step halving stalls.
bool newton(Eigen::VectorXd& k, const std::vector<double>& I, double L, double c, const BetheOptions& opt,
            double& res, int& iters) {
  Eigen::VectorXd f = bethe_residual(k, I, L, c);
  res = f.cwiseAbs().maxCoeff();
  for (iters = 0; iters < opt.max_iter && res >= opt.tol; ++iters) {
    const Eigen::VectorXd dk = bethe_jacobian(k, L, c).ldlt().solve(-f);
    double t = 1.0;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      const Eigen::VectorXd trial = k + t * dk;
      const Eigen::VectorXd ft = bethe_residual(trial, I, L, c);
      const double rt = ft.cwiseAbs().maxCoeff();
      if (rt < res) {
        k = trial;
        f = ft;
        res = rt;
        break;
      }
      if (h == 39) return false;
    }
  }
  return res < opt.tol;
}

}  // namespace

double BetheState::energy() const {
  double e = 0.0;
  for (double k : rapidities) e += k * k;
  return e;
}

BetheState solve_ground(int N, double L, double c, const BetheOptions& opt) {
  require(N >= 1, "solve_ground: N must be positive");
  require(L > 0, "solve_ground: L must be positive");
  require(c > 0 && std::isfinite(c), "solve_ground: c must be positive");

  BetheState st;
  st.N = N;
  st.L = L;
  st.c = c;
  st.quantum_numbers.resize(N);
  Eigen::VectorXd k(N);
  for (int j = 0; j < N; ++j) {
    st.quantum_numbers[j] = j - 0.5 * (N - 1);
    k(j) = 2.0 * pi * st.quantum_numbers[j] / L;
  }

  // Continuation from the free-fermion point down to c.
  const double density = N / L;
  std::vector<double> path;
  for (double cc = opt.direct_ratio * density; cc > c; cc *= 0.5) path.push_back(cc);
  path.push_back(c);

  double res = 0.0;
  int total = 0;
  for (double cc : path) {
    int it = 0;
    const bool ok = newton(k, st.quantum_numbers, L, cc, opt, res, it);
    total += it;
    if (!ok)
      fail(ErrorCode::NoConvergence, "solve_ground: Newton stalled at c = " + std::to_string(cc) +
                                         " with residual " + std::to_string(res));
  }
  st.rapidities.assign(k.data(), k.data() + N);
  st.residual = res;
  st.iterations = total;
  return st;
}

StrongCouplingFit strong_coupling_fit(int N, double L, const std::vector<double>& c_list, double max_rel_rms,
                                      const BetheOptions& opt) {
  require(c_list.size() >= 4, "strong_coupling_fit: need at least four couplings");
  StrongCouplingFit out;
  std::vector<double> x;
  for (double c : c_list) {
    const BetheState st = solve_ground(N, L, c, opt);
    out.c.push_back(c);
    out.energy_density.push_back(st.energy_density());
    out.residual.push_back(st.residual);
    x.push_back(1.0 / c);
  }
  const LsqFit fit = polyfit(x, out.energy_density, 2);
  const double A = fit.coef(0), B = fit.coef(1), C = fit.coef(2);
  out.e0 = A;
  out.p = B / A;
  out.q = C / A;
  // First-order error propagation, ignoring the small covariance with e0.
  out.e0_err = fit.stderr_(0);
  out.p_err = std::hypot(fit.stderr_(1) / A, B * fit.stderr_(0) / (A * A));
  out.q_err = std::hypot(fit.stderr_(2) / A, C * fit.stderr_(0) / (A * A));
  out.rel_rms = fit.rms_residual / std::abs(A);
  if (!(out.rel_rms <= max_rel_rms))
    fail(ErrorCode::FitPoor, "strong_coupling_fit: relative rms residual " + std::to_string(out.rel_rms) +
                                 " exceeds " + std::to_string(max_rel_rms));
  return out;
}

}  // namespace dualreg
