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

#include "numerics.hpp"

#include <algorithm>
#include <array>

namespace dualreg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownProfile: return "UnknownProfile";
    case ErrorCode::AdmissibilityViolation: return "AdmissibilityViolation";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::RescaleImpossible: return "RescaleImpossible";
    case ErrorCode::NoFreeRegion: return "NoFreeRegion";
    case ErrorCode::IllConditionedFit: return "IllConditionedFit";
    case ErrorCode::SingularCoefficient: return "SingularCoefficient";
    case ErrorCode::ResonantBox: return "ResonantBox";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::FitPoor: return "FitPoor";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
  }
  return "Unknown";
}

std::vector<double> cumulative_integral(const std::vector<double>& x, const std::vector<double>& f) {
  const std::size_t n = x.size();
  require(f.size() == n, "cumulative_integral: size mismatch");
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t i = 0; i + 1 < n; ++i) out[i + 1] = out[i] + 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return out;
  }
  // Two-point Gauss integrates the local cubic exactly.
  const double g = 0.5 / std::sqrt(3.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j0 = std::min<std::size_t>(i == 0 ? 0 : i - 1, n - 4);
    const double* xs = &x[j0];
    const double* fs = &f[j0];
    const double h = x[i + 1] - x[i];
    const double mid = 0.5 * (x[i] + x[i + 1]);
    double acc = 0.0;
    for (double z : {mid - g * h, mid + g * h}) {
      double p = 0.0;
      for (int j = 0; j < 4; ++j) {
        double l = 1.0;
        for (int m = 0; m < 4; ++m)
          if (m != j) l *= (z - xs[m]) / (xs[j] - xs[m]);
        p += l * fs[j];
      }
      acc += p;
    }
    out[i + 1] = out[i] + 0.5 * h * acc;
  }
  return out;
}

void fornberg_weights(double z, const double* x, int n, int max_order, double* c) {
  const int m = max_order;
  std::fill(c, c + n * (m + 1), 0.0);
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i + n * k] = c1 * (k * c[i - 1 + n * (k - 1)] - c5 * c[i - 1 + n * k]) / c2;
        c[i] = -c1 * c5 * c[i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j + n * k] = (c4 * c[j + n * k] - k * c[j + n * (k - 1)]) / c3;
      c[j] = c4 * c[j] / c3;
    }
    c1 = c2;
  }
}

std::vector<double> grid_derivative(const std::vector<double>& x, const std::vector<double>& f, int order,
                                    Parity parity) {
  const int n = static_cast<int>(x.size());
  require(order == 1 || order == 2, "grid_derivative: order must be 1 or 2");
  require(n >= 5 && static_cast<int>(f.size()) == n, "grid_derivative: need at least five points");
  require(parity == Parity::None || x[0] == 0.0, "grid_derivative: mirrored stencil needs x[0] = 0");
  std::vector<double> out(n);
  std::array<double, 5> nodes{}, vals{}, w{};
  std::array<double, 15> c{};
  for (int i = 0; i < n; ++i) {
    int lo = i - 2;
    if (parity == Parity::None) lo = std::max(lo, 0);
    lo = std::min(lo, n - 5);
    for (int s = 0; s < 5; ++s) {
      const int j = lo + s;
      if (j < 0) {
        nodes[s] = -x[-j];
        vals[s] = parity == Parity::Even ? f[-j] : -f[-j];
      } else {
        nodes[s] = x[j];
        vals[s] = f[j];
      }
    }
    fornberg_weights(x[i], nodes.data(), 5, 2, c.data());
    for (int s = 0; s < 5; ++s) w[s] = c[s + 5 * order];
    double acc = 0.0;
    for (int s = 0; s < 5; ++s) acc += w[s] * vals[s];
    out[i] = acc;
  }
  return out;
}

LsqFit least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  require(A.rows() == b.size() && A.rows() >= A.cols() && A.cols() > 0, "least_squares: bad shape");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LsqFit fit;
  fit.coef = svd.solve(b);
  const Eigen::VectorXd res = A * fit.coef - b;
  const auto& s = svd.singularValues();
  fit.condition = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  fit.rms_residual = std::sqrt(res.squaredNorm() / static_cast<double>(res.size()));
  fit.max_residual = res.cwiseAbs().maxCoeff();
  const Eigen::Index dof = A.rows() - A.cols();
  const double var = dof > 0 ? res.squaredNorm() / static_cast<double>(dof) : 0.0;
  Eigen::MatrixXd vs = svd.matrixV();
  for (Eigen::Index j = 0; j < vs.cols(); ++j) vs.col(j) /= s(j);
  fit.stderr_ = ((vs * vs.transpose()).diagonal() * var).cwiseSqrt();
  return fit;
}

LsqFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  require(x.size() == y.size() && static_cast<int>(x.size()) > degree, "polyfit: not enough points");
  Eigen::MatrixXd A(x.size(), degree + 1);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j, p *= x[i]) A(i, j) = p;
    b(i) = y[i];
  }
  return least_squares(A, b);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 || y[i] == 0.0 || !std::isfinite(y[i])) continue;
    lx.push_back(std::log(std::abs(x[i])));
    ly.push_back(std::log(std::abs(y[i])));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return polyfit(lx, ly, 1).coef(1);
}

std::vector<double> refined_grid(double a, double x0, const GridSpec& spec) {
  require(a > 0 && x0 > 0, "refined_grid: a and x0 must be positive");
  require(spec.core_extent > 0 && spec.core_spacing > 0 && spec.growth > 1.0, "refined_grid: bad spec");
  const double h_core = spec.core_spacing * a;
  const double h_out = spec.outer_spacing > 0 ? spec.outer_spacing : std::min(x0 / 2000.0, 0.01);
  const double core_end = std::min(spec.core_extent * a, x0);
  std::vector<double> g;
  const auto n_core = static_cast<std::size_t>(std::ceil(core_end / h_core - 1e-9));
  for (std::size_t i = 0; i <= n_core; ++i) g.push_back(core_end * static_cast<double>(i) / n_core);
  double h = core_end / n_core;
  double x = core_end;
  while (x < x0) {
    if (h < h_out) h = std::min(h * spec.growth, h_out);
    const double remaining = x0 - x;
    if (remaining <= 1.5 * h) {
      if (remaining > 0.75 * h) g.push_back(x + 0.5 * remaining);
      g.push_back(x0);
      break;
    }
    if (h >= h_out) {
      const auto m = static_cast<std::size_t>(std::ceil(remaining / h_out - 1e-9));
      for (std::size_t i = 1; i <= m; ++i) g.push_back(x + remaining * static_cast<double>(i) / m);
      break;
    }
    x += h;
    g.push_back(x);
  }
  g.back() = x0;
  return g;
}

}  // namespace dualreg
