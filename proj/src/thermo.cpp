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
#include <functional>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "manybody.hpp"

namespace dualreg {

using std::numbers::pi;

namespace {

std::vector<double> sorted_unique(std::vector<double> v, double scale) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > 1e-13 * scale) out.push_back(x);
  return out;
}

// Exact integral over [lo, hi] of a piecewise polynomial (degree <= 19)
// whose pieces change only at the given points.
template <class F>
double piecewise_exact(F&& f, double lo, double hi, std::vector<double> pts) {
  if (!(hi > lo)) return 0.0;
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  CompensatedSum s;
  double prev = lo;
  for (double p : pts) {
    if (p <= prev) continue;
    if (p > hi) break;
    s.add(gauss10(f, prev, p));
    prev = p;
  }
  return s.value();
}

// PV int_lo^hi g(v) / (v (v + d)) dv. Poles inside (lo, hi) are handled by
// folding a symmetric window onto itself; g may have a kink at a pole but
// must be smooth elsewhere inside the window.
double pv_pair(const std::function<double(double)>& g, double d, double lo, double hi, std::vector<double> bps,
               const QuadOptions& opt) {
  require(d != 0.0, "pv_pair: coincident poles");
  const auto f = [&](double v) { return g(v) / (v * (v + d)); };
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  struct Window {
    double c, h;
  };
  std::vector<Window> windows;
  for (double c : {0.0, -d}) {
    if (!(c > lo && c < hi)) continue;
    double h = std::min({0.5 * std::abs(d), c - lo, hi - c});
    for (double b : bps)
      if (std::abs(b - c) > 1e-12 * scale) h = std::min(h, std::abs(b - c));
    windows.push_back({c, h});
  }
  std::vector<double> pts;
  for (double b : bps)
    if (b > lo && b < hi) pts.push_back(b);
  for (const Window& w : windows) {
    pts.push_back(w.c - w.h);
    pts.push_back(w.c + w.h);
  }
  pts.push_back(lo);
  pts.push_back(hi);
  pts = sorted_unique(pts, scale);
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    bool inside = false;
    for (const Window& w : windows) inside = inside || std::abs(mid - w.c) < w.h;
    if (!inside) s.add(integrate(f, pts[i], pts[i + 1], opt).value);
  }
  for (const Window& w : windows) {
    const double c = w.c;
    // The folded integrand tends to a constant as t -> 0 but loses digits to
    // cancellation; the first 1e-6 of the window takes its value at t0.
    const auto folded = [&](double t) { return f(c + t) + f(c - t); };
    const double t0 = 1e-6 * w.h;
    s.add(integrate(folded, t0, w.h, opt).value + t0 * folded(t0));
  }
  return s.value();
}

// rho(l) rho(l - d) [ca rho(l + v) + cb rho(l - d - v) + c4 rho(l + v) rho(l - d - v)], integrated over l.
struct ThreeFourWeight {
  double ca = 0.0, cb = 0.0, c4 = 0.0;
};

double weight_integral(const DensityProfile& rho, double d, double v, const ThreeFourWeight& w) {
  const double lo = std::max(rho.lo(), rho.lo() + d), hi = std::min(rho.hi(), rho.hi() + d);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts;
  for (double x : rho.nodes()) {
    pts.push_back(x);
    pts.push_back(x + d);
    pts.push_back(x - v);
    pts.push_back(x + d + v);
  }
  return piecewise_exact(
      [&](double l) {
        const double r1 = rho(l + v), r2 = rho(l - d - v);
        return rho(l) * rho(l - d) * (w.ca * r1 + w.cb * r2 + w.c4 * r1 * r2);
      },
      lo, hi, pts);
}

// 2 pi int rho(l) rho(l - d) rho_h(l + v) rho_h(l - d - v) dl.
double hole_weight(const DensityProfile& rho, double d, double v) {
  const double lo = std::max(rho.lo(), rho.lo() + d), hi = std::min(rho.hi(), rho.hi() + d);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts;
  for (double x : rho.nodes()) {
    pts.push_back(x);
    pts.push_back(x + d);
    pts.push_back(x - v);
    pts.push_back(x + d + v);
  }
  return 2.0 * pi *
         piecewise_exact([&](double l) { return rho(l) * rho(l - d) * rho.hole(l + v) * rho.hole(l - d - v); }, lo, hi,
                         pts);
}

// Breakpoints in v of the weights at fixed d.
std::vector<double> weight_breaks(const DensityProfile& rho, double d) {
  std::vector<double> out;
  for (double x : rho.nodes())
    for (double y : rho.nodes()) {
      const double D = x - y;
      out.push_back(D);
      out.push_back(D - d);
      out.push_back(0.5 * (D - d));
    }
  return sorted_unique(out, std::max(1.0, rho.width()));
}

// Outer integral over d of a function of the pair separation. Even densities
// fold onto d > 0.
double integrate_over_d(const DensityProfile& rho, const std::function<double(double)>& f, const QuadOptions& opt) {
  const double w = rho.width();
  std::vector<double> pts = rho.difference_points();
  if (rho.is_even()) {
    std::vector<double> half{0.0};
    for (double p : pts)
      if (p > 0.0) half.push_back(p);
    half.push_back(w);
    return 2.0 * integrate_pieces(f, sorted_unique(half, w), opt).value;
  }
  pts.push_back(-w);
  pts.push_back(w);
  pts.push_back(0.0);
  return integrate_pieces(f, sorted_unique(pts, w), opt).value;
}

double delta_vhat(const MollifierProfile& prof, double a, double d, double v) {
  return prof.F_difference(a * v, a * d) / (a * a);
}

// G2(w) = int sigma'' sigma / t^2 (1 - cos(w t)) dt.
double g2_kernel(const MollifierProfile& prof, double w, const QuadOptions& opt) {
  const auto f = [&](double t) {
    return prof.d2_over_t(t) * prof.sigma_over_t(t) * 2.0 * sqr(std::sin(0.5 * w * t));
  };
  std::vector<double> pts{0.0};
  const double tmax = 64.0 * std::max(1.0, prof.t_far());
  for (double t = 0.5; t < tmax; t *= 2.0) pts.push_back(t);
  if (prof.shape() == MollifierProfile::Shape::Smoothstep) pts = {0.0, 0.5, 1.0};
  const double period = w > 0.0 ? 2.0 * pi / w : tmax;
  std::vector<double> fine{0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const int m = std::max(1, static_cast<int>(std::ceil((pts[i] - pts[i - 1]) / period)));
    for (int j = 1; j <= m; ++j) fine.push_back(pts[i - 1] + (pts[i] - pts[i - 1]) * j / m);
  }
  double v = integrate_pieces(f, fine, opt).value;
  if (prof.shape() != MollifierProfile::Shape::Smoothstep)
    v += integrate(f, fine.back(), std::numeric_limits<double>::infinity(), opt).value;
  return 2.0 * v;
}

const MollifierProfile& expansion_profile(const PointPotential& p) {
  require(p.kind() == PotentialKind::DualityPreserving && p.profile(),
          "thermodynamic expansion needs a duality-preserving potential");
  return *p.profile();
}

QuadOptions labelled(const QuadOptions& opt, const char* label) {
  QuadOptions o = opt;
  o.label = label;
  return o;
}

double regular_type_integral(const DensityProfile& rho, const std::function<double(double, double)>& dv,
                             const ThreeFourWeight& w, const QuadOptions& opt) {
  const double span = rho.width();
  return integrate_over_d(
      rho,
      [&](double d) {
        const auto g = [&](double v) { return sqr(dv(d, v)) * weight_integral(rho, d, v, w); };
        return pv_pair(g, d, -span - std::abs(d), span + std::abs(d), weight_breaks(rho, d), opt);
      },
      opt);
}

}  // namespace

// ---------------------------------------------------------------- DensityProfile

DensityProfile DensityProfile::fermi_sea(double q) {
  require(q > 0.0 && std::isfinite(q), "FermiSea: q must be positive");
  DensityProfile d;
  const double h = 0.5 / pi;
  d.x_ = {-q, -q, q, q};
  d.y_ = {0.0, h, h, 0.0};
  d.even_ = true;
  d.fermi_q_ = q;
  return d;
}

DensityProfile DensityProfile::tabulated(std::vector<double> lambda, std::vector<double> rho) {
  require(lambda.size() == rho.size() && lambda.size() >= 2, "Tabulated: need matching node and value lists");
  const double cap = 0.5 / pi;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    require(std::isfinite(lambda[i]) && std::isfinite(rho[i]), "Tabulated: non-finite entry");
    require(i == 0 || lambda[i] >= lambda[i - 1], "Tabulated: nodes must be sorted");
    require(rho[i] >= 0.0 && rho[i] <= cap * (1.0 + 1e-12), "Tabulated: need 0 <= rho <= 1/(2 pi)");
  }
  if (rho.front() != 0.0) {
    lambda.insert(lambda.begin(), lambda.front());
    rho.insert(rho.begin(), 0.0);
  }
  if (rho.back() != 0.0) {
    lambda.push_back(lambda.back());
    rho.push_back(0.0);
  }
  require(lambda.back() > lambda.front(), "Tabulated: zero-width support");
  DensityProfile d;
  d.x_ = std::move(lambda);
  d.y_ = std::move(rho);
  const std::size_t n = d.x_.size();
  const double scale = std::max(1.0, d.width());
  d.even_ = true;
  for (std::size_t i = 0; i < n && d.even_; ++i)
    d.even_ = std::abs(d.x_[i] + d.x_[n - 1 - i]) < 1e-12 * scale && std::abs(d.y_[i] - d.y_[n - 1 - i]) < 1e-14;
  return d;
}

double DensityProfile::operator()(double x) const {
  if (x < x_.front() || x >= x_.back()) return 0.0;
  const std::size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  // x_[i-1] <= x < x_[i]; the interval is non-degenerate.
  const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return y_[i - 1] + t * (y_[i] - y_[i - 1]);
}

std::string DensityProfile::describe() const {
  std::ostringstream os;
  if (is_fermi_sea())
    os << "FermiSea(q=" << fermi_q_ << ")";
  else
    os << "Tabulated(" << x_.size() << " nodes on [" << lo() << ", " << hi() << "])";
  return os.str();
}

double DensityProfile::moment(int k) const {
  require(k >= 0 && k <= 16, "moment: order must be in 0..16");
  return piecewise_exact([&](double x) { return std::pow(x, k) * (*this)(x); }, lo(), hi(), x_);
}

double DensityProfile::autocorrelation(double d) const {
  const double a = std::max(lo(), lo() + d), b = std::min(hi(), hi() + d);
  std::vector<double> pts = x_;
  for (double x : x_) pts.push_back(x + d);
  return piecewise_exact([&](double l) { return (*this)(l) * (*this)(l - d); }, a, b, pts);
}

double DensityProfile::hilbert(double x) const {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double y0 = x_[i], y1 = x_[i + 1];
    if (!(y1 > y0)) continue;
    const double slope = (y_[i + 1] - y_[i]) / (y1 - y0);
    const double at_x = y_[i] + slope * (x - y0);
    const double n0 = std::abs(x - y0), n1 = std::abs(x - y1);
    if (at_x != 0.0) s.add(at_x * std::log(n0 / n1));
    s.add(-slope * (y1 - y0));
  }
  return s.value();
}

std::vector<double> DensityProfile::difference_points() const {
  std::vector<double> out;
  for (double x : x_)
    for (double y : x_) out.push_back(x - y);
  return sorted_unique(out, std::max(1.0, width()));
}

// ---------------------------------------------------------------- energies

double second_moment_pair(const DensityProfile& rho) {
  const double D = rho.density(), m1 = rho.moment(1), m2 = rho.moment(2);
  return 2.0 * (D * m2 - m1 * m1);
}

double closed_form_e2(const DensityProfile& rho, double beta) {
  const double D = rho.density();
  return rho.moment(2) * (1.0 - 2.0 * beta * D + 3.0 * beta * beta * D * D);
}

double sing_kernel(const MollifierProfile& profile, double e, const QuadOptions& opt) {
  const double r = 0.5 * std::abs(e);
  if (r == 0.0) return 0.0;
  const auto f = [&](double s) { return sqr(profile.F_difference(s - r, 2.0 * r)) / ((s - r) * (s + r)); };
  CompensatedSum acc;
  const auto folded = [&](double t) { return f(r + t) + f(r - t); };
  acc.add(integrate(folded, 1e-6 * r, r, labelled(opt, "S(e) window")).value + 1e-6 * r * folded(1e-6 * r));
  std::vector<double> pts{2.0 * r};
  for (double s = 0.25; s <= 64.0; s *= 2.0)
    if (s > 2.0 * r) pts.push_back(s);
  acc.add(integrate_pieces(f, pts, labelled(opt, "S(e)")).value);
  acc.add(integrate(f, pts.back(), std::numeric_limits<double>::infinity(), labelled(opt, "S(e) tail")).value);
  return 2.0 * acc.value();
}

EnergyBreakdown thermo_pt(const DensityProfile& rho, const PointPotential& p, const QuadOptions& opt) {
  const MollifierProfile& prof = expansion_profile(p);
  const double a = p.a(), beta = p.beta();
  EnergyBreakdown e;
  e.a = a;
  e.beta = beta;
  e.E0 = rho.moment(2);
  const auto H = [&](double d) { return rho.autocorrelation(d); };
  e.E1_order1 =
      -integrate_over_d(rho, [&](double d) { return prof.F(a * d) * H(d); }, labelled(opt, "E1 order beta")) / (a * a);
  e.E1_order2 = -integrate_over_d(
                     rho, [&](double d) { return H(d) * g2_kernel(prof, a * d, labelled(opt, "G2 kernel")); },
                     labelled(opt, "E1 order beta^2")) /
                (a * a * a);
  e.E1 = beta * e.E1_order1 + beta * beta * e.E1_order2;
  e.E2_sing = -beta * beta / (4.0 * pi * a * a * a) *
              integrate_over_d(
                  rho, [&](double d) { return H(d) * sing_kernel(prof, a * d, opt); }, labelled(opt, "E2 sing"));
  e.E2_reg = 0.5 * beta * beta *
             regular_type_integral(
                 rho, [&](double d, double v) { return delta_vhat(prof, a, d, v); }, {1.0, 1.0, -2.0 * pi},
                 labelled(opt, "E2 reg"));
  e.E2 = e.E2_sing + e.E2_reg;
  return e;
}

double thermo_e2_direct(const DensityProfile& rho, const PointPotential& p, const QuadOptions& opt) {
  const MollifierProfile& prof = expansion_profile(p);
  const double a = p.a(), beta = p.beta();
  const double span = rho.width();
  const QuadOptions o = labelled(opt, "E2 direct");
  const double inf = std::numeric_limits<double>::infinity();
  const double total = integrate_over_d(
      rho,
      [&](double d) {
        const double cut = 2.0 * span + std::abs(d);
        const auto g = [&](double v) { return sqr(delta_vhat(prof, a, d, v)) * hole_weight(rho, d, v); };
        double v = pv_pair(g, d, -cut, cut, weight_breaks(rho, d), o);
        // Beyond the cut both holes are outside the support: weight H(d) / (2 pi).
        const double tail_w = rho.autocorrelation(d) / (2.0 * pi);
        const auto tail = [&](double u) {
          const double nu = u / a;
          return sqr(delta_vhat(prof, a, d, nu)) / (nu * (nu + d)) * tail_w / a;
        };
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> pts{a * cut};
          for (double u = 0.5; u <= 64.0; u *= 2.0)
            if (u > a * cut) pts.push_back(u);
          const auto t = [&](double u) { return tail(sgn * u); };
          v += integrate_pieces(t, pts, o).value + integrate(t, pts.back(), inf, o).value;
        }
        return v;
      },
      o);
  return -0.5 * beta * beta * total;
}

DivergenceAudit divergence_audit(const DensityProfile& rho, const MollifierProfile& profile, double beta,
                                 const std::vector<double>& a_list, double max_residual, const QuadOptions& opt) {
  require(beta > 0.0, "divergence_audit: beta must be positive");
  require(a_list.size() >= 3, "divergence_audit: need at least three a values");
  const auto [amin, amax] = std::minmax_element(a_list.begin(), a_list.end());
  require(*amin > 0.0 && *amax >= 4.0 * *amin, "divergence_audit: a values must be positive and span a factor >= 4");
  DivergenceAudit out;
  std::vector<double> inv, y1, y2;
  for (double a : a_list) {
    const auto p = PointPotential::duality_preserving(profile, a, beta);
    const MollifierProfile& prof = *p.profile();
    DivergenceRow row;
    row.a = a;
    row.E1_beta2 = -beta * beta / (a * a * a) *
                   integrate_over_d(
                       rho, [&](double d) { return rho.autocorrelation(d) * g2_kernel(prof, a * d, opt); },
                       labelled(opt, "E1 order beta^2"));
    row.E2_sing = -beta * beta / (4.0 * pi * a * a * a) *
                  integrate_over_d(
                      rho, [&](double d) { return rho.autocorrelation(d) * sing_kernel(prof, a * d, opt); },
                      labelled(opt, "E2 sing"));
    out.rows.push_back(row);
    inv.push_back(1.0 / a);
    y1.push_back(row.E1_beta2);
    y2.push_back(row.E2_sing);
  }
  const LsqFit f1 = polyfit(inv, y1, 1), f2 = polyfit(inv, y2, 1);
  out.d1 = f1.coef[0];
  out.c1 = f1.coef[1];
  out.d2 = f2.coef[0];
  out.c2 = f2.coef[1];
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < y1.size(); ++i) {
    s1 = std::max(s1, std::abs(y1[i]));
    s2 = std::max(s2, std::abs(y2[i]));
  }
  out.fit_residual1 = f1.max_residual / s1;
  out.fit_residual2 = f2.max_residual / s2;
  out.c1_analytic = beta * beta / (4.0 * pi) * second_moment_pair(rho) * profile.fourier_d1_sq_integral();
  if (out.fit_residual1 > max_residual || out.fit_residual2 > max_residual)
    fail(ErrorCode::FitPoor, "divergence_audit: c/a + d fit residuals " + std::to_string(out.fit_residual1) + ", " +
                                 std::to_string(out.fit_residual2) + " exceed " + std::to_string(max_residual) +
                                 "; use smaller a");
  return out;
}

LinearExtrapolation extrapolate_linear(const std::vector<double>& a, const std::vector<double>& y) {
  require(a.size() == y.size() && a.size() >= 2, "extrapolate_linear: need at least two points");
  const LsqFit f = polyfit(a, y, 1);
  return {f.coef[0], f.coef[1], f.max_residual};
}

RegularPartIdentities regular_part_identities(const DensityProfile& rho, const QuadOptions& opt) {
  RegularPartIdentities r;
  const auto dv = [](double d, double v) { return d * (d + 2.0 * v); };
  r.three_rho_a = regular_type_integral(rho, dv, {1.0, 0.0, 0.0}, labelled(opt, "three-rho a"));
  r.three_rho_b = regular_type_integral(rho, dv, {0.0, 1.0, 0.0}, labelled(opt, "three-rho b"));
  r.four_rho = regular_type_integral(rho, dv, {0.0, 0.0, 1.0}, labelled(opt, "four-rho"));
  r.intermediate = 0.5 * (r.three_rho_a + r.three_rho_b - 2.0 * pi * r.four_rho);
  const double D = rho.density(), m1 = rho.moment(1), m2 = rho.moment(2), m3 = rho.moment(3);
  const QuadOptions o = labelled(opt, "reduced form");
  CompensatedSum h;
  for (std::size_t i = 0; i + 1 < rho.nodes().size(); ++i) {
    const double lo = rho.nodes()[i], hi = rho.nodes()[i + 1];
    if (!(hi > lo)) continue;
    h.add(integrate_endpoint_singular(
              [&](double l) { return rho(l) * rho.hilbert(l) * (D * l * l * l - 3.0 * m1 * l * l + 3.0 * m2 * l - m3); },
              lo, hi, o)
              .value);
  }
  r.reduced = 8.0 * D * (D * m2 - m1 * m1) - 2.0 * h.value();
  r.closed = 3.0 * D * (D * m2 - m1 * m1);
  return r;
}

std::pair<double, double> fraction_identity(const DensityProfile& rho, const QuadOptions& opt) {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < rho.nodes().size(); ++i) {
    const double lo = rho.nodes()[i], hi = rho.nodes()[i + 1];
    if (!(hi > lo)) continue;
    s.add(integrate_endpoint_singular([&](double m) { return m * rho(m) * rho.hilbert(m); }, lo, hi,
                                      labelled(opt, "fraction identity"))
              .value);
  }
  const double D = rho.density();
  return {s.value(), 0.5 * D * D};
}

}  // namespace dualreg
