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

#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "bethe.hpp"
#include "errors.hpp"
#include "manybody.hpp"
#include "perturb.hpp"
#include "solver.hpp"

namespace dualreg {

const std::vector<AcceptanceThresholds::Field>& AcceptanceThresholds::fields() {
  using T = AcceptanceThresholds;
  static const std::vector<Field> f = {
      {"c1_max_rel_error", &T::c1_max_rel_error},
      {"c1_max_seconds", &T::c1_max_seconds},
      {"c2_rel_tol", &T::c2_rel_tol},
      {"c3_rel_tol", &T::c3_rel_tol},
      {"c3_max_seconds_per_point", &T::c3_max_seconds_per_point},
      {"c4_rel_tol", &T::c4_rel_tol},
      {"c5_naive_max", &T::c5_naive_max},
      {"c5_first_order_rel_tol", &T::c5_first_order_rel_tol},
      {"c6_min_ratio", &T::c6_min_ratio},
      {"c6_points", &T::c6_points},
      {"c6_max_seconds", &T::c6_max_seconds},
      {"c7_slope", &T::c7_slope},
      {"c7_slope_tol", &T::c7_slope_tol},
      {"c8_cancellation", &T::c8_cancellation},
      {"c8_analytic_rel_tol", &T::c8_analytic_rel_tol},
      {"c9_rel_tol", &T::c9_rel_tol},
      {"c10_slope", &T::c10_slope},
      {"c10_slope_tol", &T::c10_slope_tol},
      {"c10_max_seconds", &T::c10_max_seconds},
      {"c11_p", &T::c11_p},
      {"c11_p_tol", &T::c11_p_tol},
      {"c11_q", &T::c11_q},
      {"c11_q_tol", &T::c11_q_tol},
  };
  return f;
}

void AcceptanceThresholds::set(std::string_view name, double value) {
  for (const auto& f : fields())
    if (name == f.name) {
      require(std::isfinite(value), "threshold " + std::string(name) + " must be finite");
      this->*f.member = value;
      return;
    }
  fail(ErrorCode::InvalidArgument, "unknown threshold " + std::string(name));
}

double AcceptanceThresholds::get(std::string_view name) const {
  for (const auto& f : fields())
    if (name == f.name) return this->*f.member;
  fail(ErrorCode::InvalidArgument, "unknown threshold " + std::string(name));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

void k_zero_exact(CriterionResult& r, const AcceptanceThresholds& t) {
  const double a = 1e-2, beta = 0.5, x0 = 1.0;
  const auto prof = MollifierProfile::make("tanh");
  const auto t0 = Clock::now();
  SolveOptions opt;
  opt.tol = 1e-12;
  const WaveSolution s = solve_odd(PointPotential::duality_preserving(prof, a, beta), 0.0, x0, opt);
  const double secs = seconds_since(t0);
  const double norm = x0 + beta * prof.sigma(x0 / a);
  double worst = 0.0;
  for (std::size_t i = 1; i < s.x.size(); ++i) {
    const double exact = (s.x[i] + beta * prof.sigma(s.x[i] / a)) / norm;
    worst = std::max(worst, std::abs(s.psi[i] - exact) / std::abs(exact));
  }
  r.metrics = {{"max_rel_error", worst}, {"solve_seconds", secs}};
  r.pass = worst < t.c1_max_rel_error && secs < t.c1_max_seconds;
  r.summary = fmt("max rel error %.3g (< %.0e), %.3f s", worst, t.c1_max_rel_error, secs);
}

void zero_mode_limits(CriterionResult& r, const AcceptanceThresholds& t) {
  const double beta = 0.5, x = 0.5;
  const auto prof = MollifierProfile::make("tanh");
  std::vector<double> err;
  double I_last = 0.0, phi_last = 0.0;
  for (double a : {1e-1, 1e-2, 1e-3}) {
    const ZeroModeSolution z = solve_even_zero_mode(PointPotential::duality_preserving(prof, a, beta), x);
    I_last = z.I.back();
    phi_last = z.phi.psi.back();
    err.push_back(std::abs(I_last + 1.0 / beta) * beta);
    r.metrics.push_back({fmt("I_a(0.5)@a=%g", a), I_last});
  }
  const double phi_err = std::abs(phi_last + 1.0);
  r.metrics.push_back({"phi0(0.5)@a=0.001", phi_last});
  r.pass = err.back() < t.c2_rel_tol && decreasing(err) && phi_err < t.c2_rel_tol;
  r.summary = fmt("I_a(0.5) = %.4f (rel err %.3g), phi0(0.5) = %.4f", I_last, err.back(), phi_last);
  if (!decreasing(err)) r.summary += ", error not decreasing in a";
}

// Shared by the duality-preserving and Cheon-Shigehara jump checks.
bool jump_sweep(const PotentialTemplate& tpl, double rel_tol, double max_seconds, CriterionResult& r,
                const std::string& tag) {
  const std::vector<double> as = {1e-1, 1e-2, 1e-3};
  const double k = 1.0;
  const double x0 = choose_x0(tpl, k, as.front());
  const auto t0 = Clock::now();
  const SweepResult s = sweep_a(tpl, k, x0, as);
  const double per_point = seconds_since(t0) / as.size();
  std::vector<double> errs;
  bool ok = true;
  for (const auto& row : s.rows) {
    if (!row.ok) {
      r.error += tag + " a=" + fmt("%g", row.a) + ": " + row.error + "; ";
      ok = false;
    }
    errs.push_back(row.rel_error);
  }
  const double last = errs.back();
  r.metrics.push_back({tag + " rel_error@a=0.001", last});
  ok = ok && last < rel_tol && decreasing(errs);
  if (max_seconds > 0) ok = ok && per_point < max_seconds;
  return ok;
}

void jump_three_profiles(CriterionResult& r, const AcceptanceThresholds& t) {
  bool ok = true;
  double worst = 0.0;
  for (const char* name : {"tanh", "algebraic", "smoothstep"})
    for (double beta : {0.1, 0.5, 2.0}) {
      PotentialTemplate tpl;
      tpl.profile = MollifierProfile::make(name);
      tpl.beta = beta;
      const std::string tag = std::string(name) + fmt(" beta=%g", beta);
      ok = jump_sweep(tpl, t.c3_rel_tol, t.c3_max_seconds_per_point, r, tag) && ok;
      worst = std::max(worst, r.metrics.back().second);
    }
  r.pass = ok;
  r.summary = fmt("worst |beta_eff/beta - 1| at a=1e-3: %.3g over 3 profiles x 3 betas, monotone in a", worst);
}

void cheon(CriterionResult& r, const AcceptanceThresholds& t) {
  PotentialTemplate tpl;
  tpl.kind = PotentialKind::CheonShigehara;
  tpl.beta = 0.5;
  r.pass = jump_sweep(tpl, t.c4_rel_tol, 0.0, r, "cheon beta=0.5");
  r.summary = fmt("|beta_eff/beta - 1| at a=1e-3: %.3g", r.metrics.back().second);
}

void naive(CriterionResult& r, const AcceptanceThresholds& t) {
  const double beta = 0.1, k = 1.0, x0 = 1.0;
  const auto prof = MollifierProfile::make("tanh");
  const NaiveResult nr = solve_naive_delta_prime(prof, 1e-3, beta, k, x0);
  std::vector<double> as = {1e-2, 1e-3}, fo;
  for (double a : as) fo.push_back(naive_first_order_beta_eff(prof, a, beta, k, x0));
  const LinearExtrapolation ex = extrapolate_linear(as, fo);
  const double rel = std::abs(ex.value / beta - 1.0);
  r.metrics = {{"naive_beta_eff@a=0.001", nr.jump.beta_eff},
               {"first_order_beta_eff@a=0.01", fo[0]},
               {"first_order_beta_eff@a=0.001", fo[1]},
               {"first_order_extrapolated", ex.value}};
  r.pass = std::abs(nr.jump.beta_eff) < t.c5_naive_max && rel < t.c5_first_order_rel_tol;
  r.summary = fmt("naive beta_eff %.3g, first-order jump %.6f vs beta %.2f", nr.jump.beta_eff, ex.value, beta);
}

void conjecture(CriterionResult& r, const AcceptanceThresholds& t) {
  ConjectureOptions opt;
  opt.points = static_cast<std::size_t>(t.c6_points);
  const auto t0 = Clock::now();
  const ConjectureResult c = conjecture_check(MollifierProfile::make("tanh"), {1e-2, 1e-3}, 1.0, 1.0, 4, opt);
  const double secs = seconds_since(t0);
  double worst = INFINITY;
  for (int n = 0; n <= 3; ++n) {
    double m2 = NAN, m3 = NAN;
    for (const auto& row : c.rows) {
      if (row.n != n) continue;
      (row.a > 5e-3 ? m2 : m3) = row.mismatch;
    }
    const double ratio = m2 / m3;
    r.metrics.push_back({fmt("ratio n=%g", n), ratio});
    worst = std::min(worst, ratio);
  }
  r.metrics.push_back({"seconds", secs});
  r.pass = worst >= t.c6_min_ratio && secs < t.c6_max_seconds;
  r.summary = fmt("smallest mismatch ratio a=1e-2 over a=1e-3: %.3g (n=0..3), %.1f s", worst, secs);
}

void beta_series(CriterionResult& r, const AcceptanceThresholds& t) {
  const double a = 1e-2, k = 1.0, x0 = 1.0;
  const auto prof = MollifierProfile::make("tanh");
  const PerturbSeries s = perturb_series(prof, a, k, x0, 3, perturb_grid(a, x0, 100000));
  SolveOptions opt;
  opt.tol = 1e-12;
  const std::vector<double> bs = {0.04, 0.02, 0.01};
  std::vector<double> res;
  // Sup norm over the free region x >= 10a.
  for (double b : bs) {
    res.push_back(series_residual(s, b, 3, opt, 10.0 * a));
    r.metrics.push_back({fmt("residual@beta=%g", b), res.back()});
  }
  const double slope = loglog_slope(bs, res);
  r.metrics.push_back({"slope", slope});
  r.pass = std::abs(slope - t.c7_slope) < t.c7_slope_tol;
  r.summary = fmt("log-log slope %.3f (target %.1f +- %.1f)", slope, t.c7_slope, t.c7_slope_tol);
}

void divergence(CriterionResult& r, const AcceptanceThresholds& t) {
  const DivergenceAudit d = divergence_audit(DensityProfile::fermi_sea(std::numbers::pi),
                                             MollifierProfile::make("tanh"), 0.05, {0.02, 0.01, 0.005});
  const double analytic_rel = std::abs(d.c1 / d.c1_analytic - 1.0);
  r.metrics = {{"c1", d.c1}, {"c2", d.c2}, {"c1_analytic", d.c1_analytic}, {"cancellation", d.cancellation()},
               {"analytic_rel_error", analytic_rel}};
  r.pass = d.cancellation() < t.c8_cancellation && analytic_rel < t.c8_analytic_rel_tol;
  r.summary = fmt("c1 = %.8g, c2 = %.8g, |c1+c2|/|c1| = %.3g, c1 vs analytic %.3g", d.c1, d.c2, d.cancellation(),
                  analytic_rel);
}

void closed_form(CriterionResult& r, const AcceptanceThresholds& t) {
  const double beta = 0.05;
  const auto rho = DensityProfile::fermi_sea(std::numbers::pi);
  const auto prof = MollifierProfile::make("tanh");
  const std::vector<double> as = {0.02, 0.01, 0.005};
  std::vector<double> e;
  for (double a : as) {
    e.push_back(thermo_pt(rho, PointPotential::duality_preserving(prof, a, beta)).total());
    r.metrics.push_back({fmt("E@a=%g", a), e.back()});
  }
  const LinearExtrapolation ex = extrapolate_linear(as, e);
  const double closed = closed_form_e2(rho, beta);
  const double rel = std::abs(ex.value / closed - 1.0);
  r.metrics.push_back({"extrapolated", ex.value});
  r.metrics.push_back({"closed_form", closed});
  r.metrics.push_back({"rel_error", rel});
  r.pass = rel < t.c9_rel_tol;
  r.summary = fmt("a->0 limit %.9f vs closed form %.9f, rel %.3g", ex.value, closed, rel);
}

void lattice_vs_ed(CriterionResult& r, const AcceptanceThresholds& t) {
  const auto t0 = Clock::now();
  const LatticeSpec spec = make_lattice(64, 8.0, 2);
  const FreeState st = ground_zero_momentum(spec);
  const auto prof = MollifierProfile::make("tanh");
  const std::vector<double> bs = {0.1, 0.05, 0.025};
  std::vector<double> res;
  for (double b : bs) {
    const PointPotential p = PointPotential::duality_preserving(prof, 0.05, b);
    const double pt = lattice_pt(spec, st, p).total();
    const double ed = exact_diag(spec, p, 1).energies.front();
    res.push_back(std::abs(ed - pt));
    r.metrics.push_back({fmt("residual@beta=%g", b), res.back()});
  }
  const double secs = seconds_since(t0);
  const double slope = loglog_slope(bs, res);
  r.metrics.push_back({"slope", slope});
  r.metrics.push_back({"seconds", secs});
  r.pass = std::abs(slope - t.c10_slope) < t.c10_slope_tol && secs < t.c10_max_seconds;
  r.summary = fmt("log-log slope %.3f (target %.1f +- %.1f), %.1f s", slope, t.c10_slope, t.c10_slope_tol, secs);
}

void bethe(CriterionResult& r, const AcceptanceThresholds& t) {
  std::vector<double> cs;
  for (int i = 0; i <= 12; ++i) cs.push_back(1e2 * std::pow(1e2, i / 12.0));
  const StrongCouplingFit f = strong_coupling_fit(64, 64.0, cs);
  r.metrics = {{"e0", f.e0}, {"p", f.p}, {"p_err", f.p_err}, {"q", f.q}, {"q_err", f.q_err}};
  r.pass = std::abs(f.p - t.c11_p) < t.c11_p_tol && std::abs(f.q - t.c11_q) < t.c11_q_tol;
  r.summary = fmt("p = %.5f, q = %.4f, e0 = %.8f", f.p, f.q, f.e0);
}

using Runner = void (*)(CriterionResult&, const AcceptanceThresholds&);

struct Entry {
  const char* name;
  Runner run;
};

const Entry kEntries[kCriterionCount] = {
    {"k-zero exact solution", k_zero_exact},
    {"zero-mode limits", zero_mode_limits},
    {"jump condition, three profiles", jump_three_profiles},
    {"jump condition, Cheon-Shigehara comb", cheon},
    {"naive delta-prime counterexample", naive},
    {"series matching at the origin", conjecture},
    {"beta-series residual order", beta_series},
    {"divergence cancellation", divergence},
    {"closed-form energy", closed_form},
    {"lattice ED vs perturbation theory", lattice_vs_ed},
    {"Bethe strong-coupling coefficients", bethe},
};

}  // namespace

const char* criterion_name(int id) {
  require(id >= 1 && id <= kCriterionCount, "criterion id out of range");
  return kEntries[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceThresholds& t) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  const auto t0 = Clock::now();
  try {
    kEntries[id - 1].run(r, t);
  } catch (const std::exception& e) {
    r.pass = false;
    r.error += e.what();
  }
  r.seconds = seconds_since(t0);
  if (!r.error.empty()) r.pass = false;
  return r;
}

std::string format_result_line(const CriterionResult& r) {
  std::string line = std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": ";
  line += r.summary.empty() ? r.error : r.summary;
  if (!r.error.empty() && !r.summary.empty()) line += " (" + r.error + ")";
  return line;
}

}  // namespace dualreg
