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

#include "dualreg/dualreg.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "acceptance.hpp"
#include "bethe.hpp"
#include "errors.hpp"
#include "manybody.hpp"
#include "perturb.hpp"
#include "solver.hpp"

struct dr_profile_t {
  dualreg::MollifierProfile p;
};

struct dr_potential_t {
  dualreg::PointPotential p;
};

struct dr_density_t {
  dualreg::DensityProfile d;
};

struct dr_thresholds_t {
  dualreg::AcceptanceThresholds t;
};

struct dr_table_t {
  std::vector<std::string> names;
  std::deque<std::vector<double>> cols;  // references stay valid while columns are added
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> notes;

  std::vector<double>& column(const std::string& name) {
    names.push_back(name);
    cols.emplace_back();
    return cols.back();
  }
  void scalar(const std::string& name, double v) { scalars.emplace_back(name, v); }
};

namespace {

using namespace dualreg;

thread_local std::string g_last_error;

dr_status to_status(ErrorCode c) { return static_cast<dr_status>(static_cast<int>(c)); }

dr_status set_error(dr_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
dr_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return DR_OK;
  } catch (const Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DR_INTERNAL, e.what());
  }
}

template <class... T>
bool any_null(const T*... p) {
  return ((p == nullptr) || ...);
}

std::vector<double> to_vec(const double* v, size_t n) {
  require(n == 0 || v != nullptr, "null array with nonzero length");
  return std::vector<double>(v, v + n);
}

dr_energy to_energy(const EnergyBreakdown& e) {
  return {e.a, e.beta, e.E0, e.E1, e.E2, e.total(), e.E1_order1, e.E1_order2, e.E2_sing, e.E2_reg};
}

QuadOptions thermo_options(double rel_tol) {
  QuadOptions q = thermo_quad();
  if (rel_tol > 0) q.rel_tol = rel_tol;
  return q;
}

#define DR_REQUIRE_HANDLES(...) \
  if (any_null(__VA_ARGS__)) return set_error(DR_NULL_HANDLE, std::string(__func__) + ": null handle or output")

}  // namespace

extern "C" {

const char* dr_status_name(dr_status s) {
  switch (s) {
    case DR_OK: return "Ok";
    case DR_NULL_HANDLE: return "NullHandle";
    case DR_OUT_OF_RANGE: return "OutOfRange";
    case DR_INTERNAL: return "Internal";
    default:
      if (s >= DR_INVALID_ARGUMENT && s <= DR_NOT_UNIMODULAR) return error_code_name(static_cast<ErrorCode>(s));
      return "Unknown";
  }
}

const char* dr_last_error(void) { return g_last_error.c_str(); }

const char* dr_version(void) { return DUALREG_VERSION; }

// ---- tables

size_t dr_table_rows(dr_table t) { return t && !t->cols.empty() ? t->cols.front().size() : 0; }
size_t dr_table_cols(dr_table t) { return t ? t->cols.size() : 0; }

const char* dr_table_column_name(dr_table t, size_t j) {
  return t && j < t->names.size() ? t->names[j].c_str() : nullptr;
}

dr_status dr_table_column(dr_table t, size_t j, const double** data) {
  DR_REQUIRE_HANDLES(t, data);
  if (j >= t->cols.size()) return set_error(DR_OUT_OF_RANGE, "dr_table_column: no such column");
  *data = t->cols[j].data();
  return DR_OK;
}

dr_status dr_table_value(dr_table t, size_t i, size_t j, double* out) {
  DR_REQUIRE_HANDLES(t, out);
  if (j >= t->cols.size() || i >= t->cols[j].size()) return set_error(DR_OUT_OF_RANGE, "dr_table_value: out of range");
  *out = t->cols[j][i];
  return DR_OK;
}

size_t dr_table_scalar_count(dr_table t) { return t ? t->scalars.size() : 0; }

const char* dr_table_scalar_name(dr_table t, size_t i) {
  return t && i < t->scalars.size() ? t->scalars[i].first.c_str() : nullptr;
}

dr_status dr_table_scalar_at(dr_table t, size_t i, double* out) {
  DR_REQUIRE_HANDLES(t, out);
  if (i >= t->scalars.size()) return set_error(DR_OUT_OF_RANGE, "dr_table_scalar_at: out of range");
  *out = t->scalars[i].second;
  return DR_OK;
}

dr_status dr_table_scalar(dr_table t, const char* name, double* out) {
  DR_REQUIRE_HANDLES(t, name, out);
  for (const auto& [n, v] : t->scalars)
    if (n == name) {
      *out = v;
      return DR_OK;
    }
  return set_error(DR_OUT_OF_RANGE, std::string("dr_table_scalar: no scalar named ") + name);
}

size_t dr_table_note_count(dr_table t) { return t ? t->notes.size() : 0; }

const char* dr_table_note(dr_table t, size_t i) { return t && i < t->notes.size() ? t->notes[i].c_str() : nullptr; }

void dr_table_destroy(dr_table t) { delete t; }

// ---- profiles and potentials

dr_status dr_profile_create(const char* name, dr_profile* out) {
  DR_REQUIRE_HANDLES(name, out);
  return guarded([&] { *out = new dr_profile_t{MollifierProfile::make(name)}; });
}

void dr_profile_destroy(dr_profile p) { delete p; }

const char* dr_profile_name(dr_profile p) { return p ? p->p.name().c_str() : nullptr; }

dr_status dr_profile_eval(dr_profile p, double t, double out[4]) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] {
    out[0] = p->p.sigma(t);
    out[1] = p->p.d1(t);
    out[2] = p->p.d2(t);
    out[3] = p->p.d3(t);
  });
}

dr_status dr_profile_sigma1_sq_integral(dr_profile p, double* out) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] { *out = p->p.fourier_d1_sq_integral(); });
}

dr_status dr_potential_create(dr_potential_kind kind, dr_profile profile, double a, double beta, double a_inner,
                              dr_potential* out) {
  DR_REQUIRE_HANDLES(out);
  if ((kind == DR_DUALITY_PRESERVING || kind == DR_NAIVE_DELTA_PRIME) && !profile)
    return set_error(DR_NULL_HANDLE, "dr_potential_create: this kind needs a profile");
  return guarded([&] {
    PointPotential p;
    switch (kind) {
      case DR_DUALITY_PRESERVING: p = PointPotential::duality_preserving(profile->p, a, beta); break;
      case DR_CHEON_SHIGEHARA: p = PointPotential::cheon_shigehara(a, beta, a_inner); break;
      case DR_NAIVE_DELTA_PRIME: p = PointPotential::naive_delta_prime(profile->p, a, beta); break;
      case DR_LORENTZIAN_TOY: p = PointPotential::lorentzian_toy(a, beta); break;
      default: fail(ErrorCode::InvalidArgument, "dr_potential_create: unknown kind");
    }
    *out = new dr_potential_t{std::move(p)};
  });
}

void dr_potential_destroy(dr_potential p) { delete p; }

dr_status dr_potential_eval(dr_potential p, double x, double* out) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] { *out = p->p(x); });
}

// ---- two-body problem

dr_status dr_solve_odd(dr_potential p, double k, double x0, double tol, dr_table* wave, dr_jump* jump) {
  DR_REQUIRE_HANDLES(p, wave);
  return guarded([&] {
    SolveOptions opt;
    if (tol > 0) opt.tol = tol;
    const WaveSolution s = solve_odd(p->p, k, x0, opt);
    auto t = std::make_unique<dr_table_t>();
    t->column("x") = s.x;
    t->column("psi") = s.psi;
    t->column("dpsi") = s.dpsi;
    t->scalar("k", k);
    t->scalar("x0", x0);
    t->scalar("raw_value_at_x0", s.raw_value_at_x0);
    if (jump) {
      const JumpReport j = extract_jump(s);
      *jump = {j.P, j.Q, j.beta_eff, j.x_fit, j.x0, j.fit_residual, j.condition, j.valid ? 1 : 0};
    }
    *wave = t.release();
  });
}

dr_status dr_zero_mode(dr_potential p, double x0, dr_table* out) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] {
    const ZeroModeSolution z = solve_even_zero_mode(p->p, x0);
    auto t = std::make_unique<dr_table_t>();
    t->column("x") = z.phi.x;
    t->column("phi") = z.phi.psi;
    t->column("dphi") = z.phi.dpsi;
    t->column("I") = z.I;
    t->scalar("ode_residual", z.ode_residual);
    *out = t.release();
  });
}

dr_status dr_jump_sweep(const dr_sweep_config* cfg, dr_table* out) {
  DR_REQUIRE_HANDLES(cfg, out);
  return guarded([&] {
    PotentialTemplate tpl;
    switch (cfg->kind) {
      case DR_DUALITY_PRESERVING: tpl.kind = PotentialKind::DualityPreserving; break;
      case DR_CHEON_SHIGEHARA: tpl.kind = PotentialKind::CheonShigehara; break;
      default: fail(ErrorCode::InvalidArgument, "dr_jump_sweep: kind must be duality-preserving or Cheon-Shigehara");
    }
    if (tpl.kind == PotentialKind::DualityPreserving) {
      require(cfg->profile != nullptr, "dr_jump_sweep: profile required");
      tpl.profile = cfg->profile->p;
    }
    tpl.beta = cfg->beta;
    if (cfg->a_inner_factor > 0) tpl.a_inner_factor = cfg->a_inner_factor;
    const std::vector<double> as = to_vec(cfg->a, cfg->n_a);
    require(!as.empty(), "dr_jump_sweep: empty a list");
    SolveOptions opt;
    if (cfg->tol > 0) opt.tol = cfg->tol;
    double amax = 0.0;
    for (double a : as) amax = std::max(amax, a);
    const double x0 = cfg->x0 > 0 ? cfg->x0 : choose_x0(tpl, cfg->k, amax);
    const SweepResult r = sweep_a(tpl, cfg->k, x0, as, opt, cfg->threads > 0 ? cfg->threads : 1);
    auto t = std::make_unique<dr_table_t>();
    auto &a = t->column("a"), &be = t->column("beta_eff"), &ae = t->column("abs_error"),
         &re = t->column("rel_error"), &fr = t->column("fit_residual"), &ok = t->column("ok");
    for (const auto& row : r.rows) {
      a.push_back(row.a);
      be.push_back(row.ok ? row.beta_eff : NAN);
      ae.push_back(row.ok ? row.abs_error : NAN);
      re.push_back(row.ok ? row.rel_error : NAN);
      fr.push_back(row.ok ? row.fit_residual : NAN);
      ok.push_back(row.ok ? 1.0 : 0.0);
      if (!row.ok) t->notes.push_back("a=" + std::to_string(row.a) + ": " + row.error);
    }
    t->scalar("fitted_order", r.fitted_order);
    t->scalar("x0", x0);
    *out = t.release();
  });
}

dr_status dr_conjecture(dr_profile profile, const double* a, size_t n_a, double k, double x0, int n_max,
                        size_t points, unsigned threads, dr_table* out) {
  DR_REQUIRE_HANDLES(profile, out);
  return guarded([&] {
    ConjectureOptions opt;
    if (points > 0) opt.points = points;
    opt.threads = threads > 0 ? threads : 1;
    const ConjectureResult r = conjecture_check(profile->p, to_vec(a, n_a), k, x0, n_max, opt);
    auto t = std::make_unique<dr_table_t>();
    auto &n = t->column("n"), &ac = t->column("a"), &p1 = t->column("psi_next0"), &d0 = t->column("dpsi0"),
         &mm = t->column("mismatch"), &ws = t->column("window_shift");
    for (const auto& row : r.rows) {
      n.push_back(row.n);
      ac.push_back(row.a);
      p1.push_back(row.psi_next0);
      d0.push_back(row.dpsi0);
      mm.push_back(row.mismatch);
      ws.push_back(row.window_shift);
    }
    *out = t.release();
  });
}

dr_status dr_perturb_series(dr_profile profile, double a, double k, double x0, int n_max, size_t points,
                            size_t stride, dr_table* out) {
  DR_REQUIRE_HANDLES(profile, out);
  return guarded([&] {
    require(stride >= 1, "dr_perturb_series: stride must be positive");
    const PerturbSeries s = perturb_series(profile->p, a, k, x0, n_max, perturb_grid(a, x0, points));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s.x.size(); i += stride) keep.push_back(i);
    if (keep.back() != s.x.size() - 1) keep.push_back(s.x.size() - 1);
    auto pick = [&](const std::vector<double>& v) {
      std::vector<double> r;
      r.reserve(keep.size());
      for (std::size_t i : keep) r.push_back(v[i]);
      return r;
    };
    auto t = std::make_unique<dr_table_t>();
    t->column("x") = pick(s.x);
    for (const auto& o : s.orders) t->column("psi_" + std::to_string(o.n)) = pick(o.psi);
    for (const auto& o : s.orders) t->column("dpsi_" + std::to_string(o.n)) = pick(o.dpsi);
    *out = t.release();
  });
}

dr_status dr_beta_series(dr_profile profile, double a, double k, double x0, int order, size_t points,
                         const double* beta, size_t n_beta, double x_min, dr_table* out) {
  DR_REQUIRE_HANDLES(profile, out);
  return guarded([&] {
    const std::vector<double> bs = to_vec(beta, n_beta);
    const PerturbSeries s = perturb_series(profile->p, a, k, x0, order, perturb_grid(a, x0, points));
    SolveOptions opt;
    opt.tol = 1e-12;
    auto t = std::make_unique<dr_table_t>();
    t->column("beta") = bs;
    auto& res = t->column("residual");
    for (double b : bs) res.push_back(series_residual(s, b, order, opt, x_min));
    t->scalar("slope", bs.size() >= 2 ? loglog_slope(bs, res) : NAN);
    *out = t.release();
  });
}

dr_status dr_naive_delta_prime(dr_profile profile, const double* a, size_t n_a, double beta, double k, double x0,
                               double excision_over_a, dr_table* out) {
  DR_REQUIRE_HANDLES(profile, out);
  return guarded([&] {
    const std::vector<double> as = to_vec(a, n_a);
    auto t = std::make_unique<dr_table_t>();
    t->column("a") = as;
    auto &be = t->column("beta_eff"), &fo = t->column("first_order_beta_eff"), &sp = t->column("singular_points");
    for (double ai : as) {
      const NaiveResult r =
          solve_naive_delta_prime(profile->p, ai, beta, k, x0, {}, excision_over_a > 0 ? excision_over_a : 1e-6);
      be.push_back(r.jump.beta_eff);
      sp.push_back(static_cast<double>(r.singular_points.size()));
      fo.push_back(naive_first_order_beta_eff(profile->p, ai, beta, k, x0));
    }
    t->scalar("first_order_extrapolated", as.size() >= 2 ? extrapolate_linear(as, fo).value : NAN);
    *out = t.release();
  });
}

dr_status dr_lorentzian_toy(double a, double beta, const double* x, size_t n_x, double x_probe, dr_table* out) {
  DR_REQUIRE_HANDLES(out);
  return guarded([&] {
    const LorentzianToyResult r = lorentzian_toy(a, beta, to_vec(x, n_x), x_probe);
    auto t = std::make_unique<dr_table_t>();
    t->column("x") = r.x;
    t->column("f") = r.f;
    t->column("f_first_order") = r.f_first_order;
    t->scalar("x_probe", r.x_probe);
    t->scalar("jump", r.jump);
    t->scalar("jump_first_order", r.jump_first_order);
    *out = t.release();
  });
}

// ---- many-body

dr_status dr_lattice_pt(dr_potential p, int M, double L, int N, const int* modes, size_t n_modes, dr_energy* out,
                        dr_table* warnings) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] {
    const LatticeSpec spec = make_lattice(M, L, N);
    const FreeState st = modes ? make_state(spec, std::vector<int>(modes, modes + n_modes)) : ground_zero_momentum(spec);
    const EnergyBreakdown e = lattice_pt(spec, st, p->p);
    *out = to_energy(e);
    if (warnings) {
      auto t = std::make_unique<dr_table_t>();
      t->notes = e.warnings;
      *warnings = t.release();
    }
  });
}

dr_status dr_exact_diag(dr_potential p, int M, double L, int N, int n_levels, int momentum, dr_table* out) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] {
    const EDResult r = exact_diag(make_lattice(M, L, N), p->p, n_levels, momentum);
    auto t = std::make_unique<dr_table_t>();
    auto& lv = t->column("level");
    for (std::size_t i = 0; i < r.energies.size(); ++i) lv.push_back(static_cast<double>(i));
    t->column("energy") = r.energies;
    t->scalar("dimension", static_cast<double>(r.dimension));
    t->scalar("momentum", r.momentum);
    t->scalar("iterative", r.iterative ? 1.0 : 0.0);
    *out = t.release();
  });
}

dr_status dr_continuum_pair_energy(dr_potential p, double L, double* out) {
  DR_REQUIRE_HANDLES(p, out);
  return guarded([&] { *out = continuum_pair_energy(p->p, L); });
}

dr_status dr_density_fermi_sea(double q, dr_density* out) {
  DR_REQUIRE_HANDLES(out);
  return guarded([&] { *out = new dr_density_t{DensityProfile::fermi_sea(q)}; });
}

dr_status dr_density_tabulated(const double* lambda, const double* rho, size_t n, dr_density* out) {
  DR_REQUIRE_HANDLES(lambda, rho, out);
  return guarded([&] { *out = new dr_density_t{DensityProfile::tabulated(to_vec(lambda, n), to_vec(rho, n))}; });
}

void dr_density_destroy(dr_density d) { delete d; }

dr_status dr_density_moment(dr_density d, int k, double* out) {
  DR_REQUIRE_HANDLES(d, out);
  return guarded([&] { *out = d->d.moment(k); });
}

dr_status dr_thermo_pt(dr_density rho, dr_potential p, double rel_tol, dr_energy* out) {
  DR_REQUIRE_HANDLES(rho, p, out);
  return guarded([&] { *out = to_energy(thermo_pt(rho->d, p->p, thermo_options(rel_tol))); });
}

dr_status dr_thermo_e2_direct(dr_density rho, dr_potential p, double rel_tol, double* out) {
  DR_REQUIRE_HANDLES(rho, p, out);
  return guarded([&] { *out = thermo_e2_direct(rho->d, p->p, thermo_options(rel_tol)); });
}

dr_status dr_divergence_audit(dr_density rho, dr_profile profile, double beta, const double* a, size_t n_a,
                              double max_residual, dr_table* out) {
  DR_REQUIRE_HANDLES(rho, profile, out);
  return guarded([&] {
    const DivergenceAudit d =
        divergence_audit(rho->d, profile->p, beta, to_vec(a, n_a), max_residual > 0 ? max_residual : 1e-3);
    auto t = std::make_unique<dr_table_t>();
    auto &ac = t->column("a"), &e1 = t->column("E1_beta2"), &es = t->column("E2_sing");
    for (const auto& row : d.rows) {
      ac.push_back(row.a);
      e1.push_back(row.E1_beta2);
      es.push_back(row.E2_sing);
    }
    t->scalar("c1", d.c1);
    t->scalar("d1", d.d1);
    t->scalar("c2", d.c2);
    t->scalar("d2", d.d2);
    t->scalar("c1_analytic", d.c1_analytic);
    t->scalar("fit_residual1", d.fit_residual1);
    t->scalar("fit_residual2", d.fit_residual2);
    t->scalar("cancellation", d.cancellation());
    *out = t.release();
  });
}

dr_status dr_closed_form(dr_density rho, double beta, double* out) {
  DR_REQUIRE_HANDLES(rho, out);
  return guarded([&] { *out = closed_form_e2(rho->d, beta); });
}

dr_status dr_regular_part_identities(dr_density rho, dr_table* out) {
  DR_REQUIRE_HANDLES(rho, out);
  return guarded([&] {
    const RegularPartIdentities id = regular_part_identities(rho->d);
    auto t = std::make_unique<dr_table_t>();
    t->column("four_rho") = {id.four_rho};
    t->column("three_rho_a") = {id.three_rho_a};
    t->column("three_rho_b") = {id.three_rho_b};
    t->column("intermediate") = {id.intermediate};
    t->column("reduced") = {id.reduced};
    t->column("closed") = {id.closed};
    *out = t.release();
  });
}

dr_status dr_extrapolate_linear(const double* a, const double* y, size_t n, double* value, double* slope) {
  DR_REQUIRE_HANDLES(a, y, value);
  return guarded([&] {
    const LinearExtrapolation e = extrapolate_linear(to_vec(a, n), to_vec(y, n));
    *value = e.value;
    if (slope) *slope = e.slope;
  });
}

// ---- Lieb-Liniger

dr_status dr_bethe_ground(int N, double L, double c, dr_table* out) {
  DR_REQUIRE_HANDLES(out);
  return guarded([&] {
    const BetheState s = solve_ground(N, L, c);
    auto t = std::make_unique<dr_table_t>();
    t->column("quantum_number") = s.quantum_numbers;
    t->column("rapidity") = s.rapidities;
    t->scalar("energy", s.energy());
    t->scalar("energy_density", s.energy_density());
    t->scalar("residual", s.residual);
    t->scalar("iterations", s.iterations);
    *out = t.release();
  });
}

dr_status dr_bethe_fit(int N, double L, const double* c, size_t n_c, double max_rel_rms, dr_table* out) {
  DR_REQUIRE_HANDLES(out);
  return guarded([&] {
    const StrongCouplingFit f = strong_coupling_fit(N, L, to_vec(c, n_c), max_rel_rms > 0 ? max_rel_rms : 1e-6);
    auto t = std::make_unique<dr_table_t>();
    t->column("c") = f.c;
    t->column("E_over_L") = f.energy_density;
    t->column("residual") = f.residual;
    t->scalar("e0", f.e0);
    t->scalar("p", f.p);
    t->scalar("q", f.q);
    t->scalar("e0_err", f.e0_err);
    t->scalar("p_err", f.p_err);
    t->scalar("q_err", f.q_err);
    t->scalar("rel_rms", f.rel_rms);
    *out = t.release();
  });
}

// ---- acceptance

dr_status dr_thresholds_create(dr_thresholds* out) {
  DR_REQUIRE_HANDLES(out);
  return guarded([&] { *out = new dr_thresholds_t{}; });
}

void dr_thresholds_destroy(dr_thresholds t) { delete t; }

dr_status dr_thresholds_set(dr_thresholds t, const char* name, double value) {
  DR_REQUIRE_HANDLES(t, name);
  return guarded([&] { t->t.set(name, value); });
}

dr_status dr_thresholds_get(dr_thresholds t, const char* name, double* out) {
  DR_REQUIRE_HANDLES(t, name, out);
  return guarded([&] { *out = t->t.get(name); });
}

size_t dr_thresholds_count(void) { return AcceptanceThresholds::fields().size(); }

const char* dr_thresholds_name(size_t i) {
  const auto& f = AcceptanceThresholds::fields();
  return i < f.size() ? f[i].name : nullptr;
}

int dr_criterion_count(void) { return kCriterionCount; }

const char* dr_criterion_name(int id) { return id >= 1 && id <= kCriterionCount ? criterion_name(id) : nullptr; }

dr_status dr_acceptance_run(int id, dr_thresholds thresholds, int* pass, dr_table* out) {
  DR_REQUIRE_HANDLES(pass, out);
  if (id < 1 || id > kCriterionCount) return set_error(DR_OUT_OF_RANGE, "dr_acceptance_run: no such criterion");
  return guarded([&] {
    const CriterionResult r = run_criterion(id, thresholds ? thresholds->t : AcceptanceThresholds{});
    auto t = std::make_unique<dr_table_t>();
    t->scalars = r.metrics;
    t->scalar("seconds", r.seconds);
    t->notes.push_back(format_result_line(r));
    if (!r.error.empty()) t->notes.push_back(r.error);
    *pass = r.pass ? 1 : 0;
    *out = t.release();
  });
}

}  // extern "C"
