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

#include "profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "numerics.hpp"

namespace dualreg {

using std::numbers::pi;

struct MollifierProfile::Impl {
  Shape shape = Shape::Custom;
  std::string name;
  ProfileFunctions fns;
  double sq_integral = 0.0;
};

namespace {

double tanh_d1(double t) {
  const double c = std::cosh(t);
  return std::isfinite(c * c) ? 1.0 / (c * c) : 0.0;
}

double smoothstep_sigma(double t) {
  if (t >= 1.0) return 1.0;
  if (t <= -1.0) return -1.0;
  const double t2 = t * t;
  return t * (15.0 - 10.0 * t2 + 3.0 * t2 * t2) / 8.0;
}

// int (15/8)(1 - t^2)^2 cos(w t) dt over [-1, 1].
double smoothstep_transform(double w) {
  w = std::abs(w);
  if (w < 1.0) {
    return boost::math::quadrature::gauss<double, 20>::integrate(
        [w](double t) { return 15.0 / 8.0 * sqr(1.0 - t * t) * std::cos(w * t); }, -1.0, 1.0);
  }
  const double s = std::sin(w), c = std::cos(w);
  return 30.0 * (3.0 * s - 3.0 * w * c - w * w * s) / std::pow(w, 5);
}

}  // namespace

MollifierProfile MollifierProfile::make(std::string_view name) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::string(name);
  ProfileFunctions& f = impl->fns;
  if (name == "tanh") {
    impl->shape = Shape::Tanh;
    f.sigma = [](double t) { return std::tanh(t); };
    f.d1 = tanh_d1;
    f.d2 = [](double t) { return -2.0 * std::tanh(t) * tanh_d1(t); };
    f.d3 = [](double t) {
      const double s = tanh_d1(t), th = std::tanh(t);
      return -2.0 * s * s + 4.0 * th * th * s;
    };
    f.d1_at_0 = 1.0;
    f.d3_at_0 = -2.0;
    f.d5_at_0 = 16.0;
    f.t_far = 11.0;
    impl->sq_integral = 8.0 * pi / 3.0;
  } else if (name == "algebraic") {
    impl->shape = Shape::Algebraic;
    f.sigma = [](double t) { return t / std::sqrt(1.0 + t * t); };
    f.d1 = [](double t) { return std::pow(1.0 + t * t, -1.5); };
    f.d2 = [](double t) { return -3.0 * t * std::pow(1.0 + t * t, -2.5); };
    f.d3 = [](double t) { return (12.0 * t * t - 3.0) * std::pow(1.0 + t * t, -3.5); };
    f.d1_at_0 = 1.0;
    f.d3_at_0 = -3.0;
    f.d5_at_0 = 45.0;
    f.t_far = 1733.0;
    impl->sq_integral = 3.0 * pi * pi / 4.0;
  } else if (name == "smoothstep") {
    impl->shape = Shape::Smoothstep;
    f.sigma = smoothstep_sigma;
    f.d1 = [](double t) { return std::abs(t) >= 1.0 ? 0.0 : 15.0 / 8.0 * sqr(1.0 - t * t); };
    f.d2 = [](double t) { return std::abs(t) >= 1.0 ? 0.0 : -7.5 * t * (1.0 - t * t); };
    f.d3 = [](double t) { return std::abs(t) >= 1.0 ? 0.0 : -7.5 * (1.0 - 3.0 * t * t); };
    f.d1_at_0 = 15.0 / 8.0;
    f.d3_at_0 = -7.5;
    f.d5_at_0 = 45.0;
    f.t_far = 1.0;
    impl->sq_integral = 40.0 * pi / 7.0;
  } else {
    fail(ErrorCode::UnknownProfile, "'" + std::string(name) + "' (expected tanh, algebraic or smoothstep)");
  }
  MollifierProfile p(std::move(impl));
  check_admissibility(p);
  return p;
}

MollifierProfile MollifierProfile::custom(std::string name, ProfileFunctions fns) {
  require(fns.sigma && fns.d1 && fns.d2 && fns.d3, "custom profile needs sigma and three derivatives");
  require(fns.t_far > 0, "custom profile needs t_far > 0");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->shape = Shape::Custom;
  impl->fns = std::move(fns);
  MollifierProfile p(impl);
  check_admissibility(p);
  const ProfileFunctions& f = impl->fns;
  const double T = 4.0 * f.t_far;
  impl->sq_integral =
      2.0 * pi * 2.0 * integrate([&](double t) { return sqr(f.d1(t)); }, 0.0, T, {1e-13, 0, 20, "int sigma'^2"}).value;
  return p;
}

const std::string& MollifierProfile::name() const { return impl_->name; }
MollifierProfile::Shape MollifierProfile::shape() const { return impl_->shape; }
double MollifierProfile::sigma(double t) const { return impl_->fns.sigma(t); }
double MollifierProfile::d1(double t) const { return impl_->fns.d1(t); }
double MollifierProfile::d2(double t) const { return impl_->fns.d2(t); }
double MollifierProfile::d3(double t) const { return impl_->fns.d3(t); }
double MollifierProfile::d1_at_0() const { return impl_->fns.d1_at_0; }
double MollifierProfile::d3_at_0() const { return impl_->fns.d3_at_0; }
double MollifierProfile::d5_at_0() const { return impl_->fns.d5_at_0; }
double MollifierProfile::t_far() const { return impl_->fns.t_far; }
double MollifierProfile::fourier_d1_sq_integral() const { return impl_->sq_integral; }

double MollifierProfile::sigma_over_t(double t) const {
  if (std::abs(t) < 1e-3) {
    const double t2 = t * t;
    return d1_at_0() + t2 * (d3_at_0() / 6.0 + t2 * d5_at_0() / 120.0);
  }
  return sigma(t) / t;
}

double MollifierProfile::d2_over_t(double t) const {
  if (std::abs(t) < 1e-3) return d3_at_0() + t * t * d5_at_0() / 6.0;
  return d2(t) / t;
}

double MollifierProfile::fourier_d1(double w) const {
  w = std::abs(w);
  switch (impl_->shape) {
    case Shape::Tanh: {
      const double z = 0.5 * pi * w;
      if (z < 1e-4) return 2.0 * (1.0 - z * z / 6.0);
      if (z > 700.0) return 0.0;
      return pi * w / std::sinh(z);
    }
    case Shape::Algebraic:
      if (w == 0.0) return 2.0;
      if (w > 700.0) return 0.0;
      return 2.0 * w * std::cyl_bessel_k(1.0, w);
    case Shape::Smoothstep:
      return smoothstep_transform(w);
    case Shape::Custom: {
      const double T = 4.0 * t_far();
      const double piece = w > 0 ? std::min(1.0, pi / w) : T;
      std::vector<double> pts;
      for (double t = 0.0; t < T; t += piece) pts.push_back(t);
      pts.push_back(T);
      const auto& d1f = impl_->fns.d1;
      return 2.0 * integrate_pieces([&](double t) { return d1f(t) * std::cos(w * t); }, pts,
                                    {1e-12, 1e-15, 20, "sigma' transform"})
                       .value;
    }
  }
  return 0.0;
}

double MollifierProfile::F_difference(double u, double e) const {
  if (e == 0.0) return 0.0;
  const auto f = [this](double z) { return z * fourier_d1(z); };
  const double lo = std::min(u, u + e), hi = std::max(u, u + e);
  double v = 0.0;
  // Keep panels short and never straddling 0 (the algebraic transform is not smooth there).
  std::vector<double> pts{lo};
  if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
  pts.push_back(hi);
  std::vector<double> fine;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const int m = std::max(1, static_cast<int>(std::ceil((pts[i + 1] - pts[i]) / 0.5)));
    for (int j = 0; j < m; ++j) fine.push_back(pts[i] + (pts[i + 1] - pts[i]) * j / m);
  }
  fine.push_back(hi);
  v = integrate_pieces(f, fine, {1e-13, 0, 20, "F difference"}).value;
  return e > 0 ? v : -v;
}

double MollifierProfile::F(double x) const { return F_difference(0.0, std::abs(x)); }

void check_admissibility(const MollifierProfile& p) {
  auto violate = [&](const std::string& cond, double t) {
    fail(ErrorCode::AdmissibilityViolation, "profile '" + p.name() + "': " + cond + " fails at t = " + std::to_string(t));
  };
  if (!(p.d1(0.0) > 0.0)) violate("sigma'(0) > 0", 0.0);
  if (std::abs(p.sigma(0.0)) > 1e-14) violate("sigma(0) = 0", 0.0);
  const int n = 10000;
  for (int i = 1; i <= n; ++i) {
    const double t = 50.0 * i / n;
    if (std::abs(p.sigma(t) + p.sigma(-t)) > 1e-12 * std::max(1.0, std::abs(p.sigma(t)))) violate("oddness", t);
    if (p.d1(t) < 0.0) violate("sigma' >= 0", t);
  }
  for (double T = p.t_far(); T <= 64.0 * p.t_far(); T *= 1.25) {
    if (std::abs(p.sigma(T) - 1.0) >= 1e-6) violate("sigma -> 1", T);
    if (std::abs(T * T * p.d2(T)) >= 1e-6) violate("t^2 sigma'' -> 0", T);
  }
}

const char* potential_kind_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::DualityPreserving: return "duality";
    case PotentialKind::CheonShigehara: return "cheon";
    case PotentialKind::NaiveDeltaPrime: return "naive";
    case PotentialKind::LorentzianToy: return "lorentzian";
  }
  return "?";
}

PointPotential PointPotential::duality_preserving(const MollifierProfile& profile, double a, double beta) {
  require(a > 0.0, "duality-preserving potential needs a > 0");
  require(beta >= 0.0, "duality-preserving potential needs beta >= 0 (attractive case not supported)");
  PointPotential p;
  p.kind_ = PotentialKind::DualityPreserving;
  p.profile_ = profile;
  p.a_ = a;
  p.beta_ = beta;
  return p;
}

double default_cheon_inner_width(double a, double beta) {
  // The outer spikes nearly cancel the incoming slope (psi'(a+) = a/beta psi'(0)),
  // so a Gaussian of width s shifts the jump by about s beta / a^2 relative to
  // a/beta; keep that well below the O(a/beta) regularization error.
  return std::min(a / 100.0, 1e-2 * a * a * a / (beta * beta));
}

PointPotential PointPotential::cheon_shigehara(double a, double beta, double a_inner) {
  require(a > 0.0 && beta > 0.0, "Cheon-Shigehara comb needs a > 0 and beta > 0");
  PointPotential p;
  p.kind_ = PotentialKind::CheonShigehara;
  p.a_ = a;
  p.beta_ = beta;
  p.a_inner_ = a_inner > 0.0 ? a_inner : default_cheon_inner_width(a, beta);
  require(p.a_inner_ < a, "Cheon-Shigehara inner width must be below a");
  return p;
}

PointPotential PointPotential::naive_delta_prime(const MollifierProfile& profile, double a, double beta) {
  require(a > 0.0 && beta >= 0.0, "naive delta' needs a > 0 and beta >= 0");
  PointPotential p;
  p.kind_ = PotentialKind::NaiveDeltaPrime;
  p.profile_ = profile;
  p.a_ = a;
  p.beta_ = beta;
  return p;
}

PointPotential PointPotential::lorentzian_toy(double a, double beta) {
  require(a > 0.0 && beta >= 0.0, "Lorentzian toy needs a > 0 and beta >= 0");
  PointPotential p;
  p.kind_ = PotentialKind::LorentzianToy;
  p.a_ = a;
  p.beta_ = beta;
  return p;
}

double PointPotential::operator()(double x) const {
  switch (kind_) {
    case PotentialKind::DualityPreserving: {
      if (beta_ == 0.0) return 0.0;
      const double t = std::abs(x) / a_;
      const double den = 1.0 + beta_ / a_ * profile_->sigma_over_t(t);
      if (!(den > 0.0)) fail(ErrorCode::DomainError, "x + beta sigma_a(x) <= 0 at x = " + std::to_string(x));
      return beta_ / (a_ * a_ * a_) * profile_->d2_over_t(t) / den;
    }
    case PotentialKind::CheonShigehara: {
      const double s = a_inner_;
      const auto bump = [s](double y) { return std::exp(-0.5 * sqr(y / s)) / (s * std::sqrt(2.0 * pi)); };
      const double w_out = 1.0 / beta_ - 1.0 / a_;
      const double w_mid = 2.0 * (beta_ / (a_ * a_) - 1.0 / a_);
      return w_out * (bump(x - a_) + bump(x + a_)) + w_mid * bump(x);
    }
    case PotentialKind::NaiveDeltaPrime:
      return beta_ / a_ * profile_->d1(x / a_);
    case PotentialKind::LorentzianToy:
      return beta_ * 2.0 / pi * a_ / (a_ * a_ + x * x);
  }
  return 0.0;
}

double PointPotential::support_radius(double rel) const {
  double vmax = 0.0;
  for (int i = 0; i <= 4000; ++i) vmax = std::max(vmax, std::abs((*this)(a_ * 20.0 * i / 4000)));
  if (vmax == 0.0) return a_;
  double last = a_;
  for (double x = a_; x < 1e7 * a_; x *= 1.05)
    if (std::abs((*this)(x)) >= rel * vmax) last = x;
  return last * 1.05;
}

PotentialFourier potential_fourier(const PointPotential& p, const std::vector<double>& lambdas) {
  require(p.kind() == PotentialKind::DualityPreserving || p.kind() == PotentialKind::CheonShigehara,
          "potential_fourier: kind must be duality or cheon");
  PotentialFourier out;
  out.lambda = lambdas;
  const double a = p.a(), beta = p.beta();
  if (p.profile()) out.sigma1_sq_integral = p.profile()->fourier_d1_sq_integral();
  const double r_tail = p.support_radius(1e-14);
  for (double lam : lambdas) {
    double v = 0.0;
    if (p.kind() == PotentialKind::CheonShigehara) {
      const double s = p.a_inner();
      v = std::exp(-0.5 * sqr(lam * s)) *
          (2.0 * (beta / (a * a) - 1.0 / a) + 2.0 * (1.0 / beta - 1.0 / a) * std::cos(lam * a));
      out.truncation_radius = std::numeric_limits<double>::infinity();
    } else if (beta != 0.0) {
      double R = std::max(50.0 * a, 50.0 * beta) + (lam != 0.0 ? 10.0 / std::abs(lam) : 0.0);
      R = std::max(R, r_tail);
      out.truncation_radius = std::max(out.truncation_radius, R);
      std::vector<double> pts{0.0};
      const double wave = lam != 0.0 ? pi / std::abs(lam) : R;
      double x = std::min(a, R);
      while (true) {
        pts.push_back(x);
        if (x >= R) break;
        x = std::min({R, 2.0 * x, x + wave});
      }
      v = 2.0 * integrate_pieces([&](double y) { return p(y) * std::cos(lam * y); }, pts,
                                 {1e-12, 1e-15 * beta / (a * a), 20, "potential transform"})
                    .value;
    }
    out.vhat.push_back(v);
    out.order1.push_back(beta * lam * lam);
    out.order2.push_back(-beta * beta * lam * lam / (4.0 * a * pi) * out.sigma1_sq_integral);
  }
  return out;
}

}  // namespace dualreg
