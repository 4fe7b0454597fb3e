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
#include <cstring>
#include <string>

#include "doctest.h"
#include "dualreg/dualreg.h"

namespace {

double scalar(dr_table t, const char* name) {
  double v = NAN;
  REQUIRE(dr_table_scalar(t, name, &v) == DR_OK);
  return v;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(dr_status_name(DR_OK)) == "Ok");
  CHECK(std::string(dr_status_name(DR_NULL_HANDLE)) == "NullHandle");
  CHECK(std::string(dr_version()).size() > 0);
}

TEST_CASE("errors map to status codes and set the last error") {
  dr_profile p = nullptr;
  CHECK(dr_profile_create("erf", &p) == DR_UNKNOWN_PROFILE);
  CHECK(p == nullptr);
  CHECK(std::strstr(dr_last_error(), "erf") != nullptr);

  REQUIRE(dr_profile_create("tanh", &p) == DR_OK);
  dr_potential v = nullptr;
  CHECK(dr_potential_create(DR_DUALITY_PRESERVING, p, -1.0, 0.5, 0, &v) == DR_INVALID_ARGUMENT);
  CHECK(dr_potential_create(DR_DUALITY_PRESERVING, nullptr, 0.1, 0.5, 0, &v) == DR_NULL_HANDLE);
  CHECK(dr_profile_eval(nullptr, 0.0, nullptr) == DR_NULL_HANDLE);
  dr_profile_destroy(p);
  dr_profile_destroy(nullptr);
}

TEST_CASE("profile and potential evaluation") {
  dr_profile p = nullptr;
  REQUIRE(dr_profile_create("tanh", &p) == DR_OK);
  CHECK(std::string(dr_profile_name(p)) == "tanh");
  double s[4];
  REQUIRE(dr_profile_eval(p, 0.5, s) == DR_OK);
  CHECK(s[0] == doctest::Approx(std::tanh(0.5)));
  CHECK(s[1] == doctest::Approx(1 - std::tanh(0.5) * std::tanh(0.5)));
  double sq = 0;
  REQUIRE(dr_profile_sigma1_sq_integral(p, &sq) == DR_OK);
  CHECK(sq == doctest::Approx(8 * M_PI / 3));

  dr_potential v = nullptr;
  REQUIRE(dr_potential_create(DR_DUALITY_PRESERVING, p, 0.1, 0.5, 0, &v) == DR_OK);
  double val = 0;
  REQUIRE(dr_potential_eval(v, 0.05, &val) == DR_OK);
  CHECK(std::isfinite(val));
  dr_potential_destroy(v);
  dr_profile_destroy(p);
}

TEST_CASE("odd solution through the C interface") {
  dr_profile p = nullptr;
  dr_potential v = nullptr;
  REQUIRE(dr_profile_create("tanh", &p) == DR_OK);
  REQUIRE(dr_potential_create(DR_DUALITY_PRESERVING, p, 1e-3, 0.5, 0, &v) == DR_OK);
  dr_table wave = nullptr;
  dr_jump j{};
  REQUIRE(dr_solve_odd(v, 1.0, 1.0, 1e-10, &wave, &j) == DR_OK);
  CHECK(j.valid);
  CHECK(j.beta_eff == doctest::Approx(0.5).epsilon(2e-3));
  REQUIRE(dr_table_cols(wave) == 3);
  CHECK(std::string(dr_table_column_name(wave, 1)) == "psi");
  const size_t n = dr_table_rows(wave);
  double last = 0;
  REQUIRE(dr_table_value(wave, n - 1, 1, &last) == DR_OK);
  CHECK(last == doctest::Approx(1.0));
  CHECK(dr_table_value(wave, n, 1, &last) == DR_OUT_OF_RANGE);
  const double* col = nullptr;
  REQUIRE(dr_table_column(wave, 0, &col) == DR_OK);
  CHECK(col[0] == 0.0);
  CHECK(dr_table_column(wave, 3, &col) == DR_OUT_OF_RANGE);
  dr_table_destroy(wave);

  // Matching point inside the core: no free region to fit.
  CHECK(dr_solve_odd(v, 1.0, 1e-3, 1e-10, &wave, &j) == DR_NO_FREE_REGION);
  dr_potential_destroy(v);
  dr_profile_destroy(p);
}

TEST_CASE("sweep table with scalars") {
  dr_profile p = nullptr;
  REQUIRE(dr_profile_create("smoothstep", &p) == DR_OK);
  const double as[] = {0.1, 0.01};
  dr_sweep_config cfg{};
  cfg.kind = DR_DUALITY_PRESERVING;
  cfg.profile = p;
  cfg.beta = 0.5;
  cfg.k = 1.0;
  cfg.a = as;
  cfg.n_a = 2;
  cfg.threads = 1;
  dr_table t = nullptr;
  REQUIRE(dr_jump_sweep(&cfg, &t) == DR_OK);
  CHECK(dr_table_rows(t) == 2);
  CHECK(scalar(t, "fitted_order") == doctest::Approx(1.0).epsilon(0.1));
  CHECK(scalar(t, "x0") >= 1.0);
  double none = 0;
  CHECK(dr_table_scalar(t, "missing", &none) == DR_OUT_OF_RANGE);
  dr_table_destroy(t);
  dr_profile_destroy(p);
}

TEST_CASE("many-body calls") {
  dr_density rho = nullptr;
  REQUIRE(dr_density_fermi_sea(M_PI, &rho) == DR_OK);
  double m2 = 0, closed = 0;
  REQUIRE(dr_density_moment(rho, 2, &m2) == DR_OK);
  CHECK(m2 == doctest::Approx(M_PI * M_PI / 3));
  REQUIRE(dr_closed_form(rho, 0.1, &closed) == DR_OK);
  CHECK(closed == doctest::Approx(M_PI * M_PI / 3 * (1 - 0.2 + 0.03)));
  dr_density_destroy(rho);

  const double lam[] = {0, 1, 2}, bad[] = {0, 1, 0};
  CHECK(dr_density_tabulated(lam, bad, 3, &rho) == DR_INVALID_ARGUMENT);

  dr_profile p = nullptr;
  dr_potential v = nullptr;
  REQUIRE(dr_profile_create("tanh", &p) == DR_OK);
  REQUIRE(dr_potential_create(DR_DUALITY_PRESERVING, p, 0.5, 0.01, 0, &v) == DR_OK);
  dr_energy e{};
  dr_table warn = nullptr;
  REQUIRE(dr_lattice_pt(v, 32, 8.0, 2, nullptr, 0, &e, &warn) == DR_OK);
  CHECK(e.total == doctest::Approx(e.E0 + e.E1 + e.E2));
  // a = 0.5 is below 10 lattice spacings.
  REQUIRE(dr_table_note_count(warn) == 1);
  CHECK(std::strstr(dr_table_note(warn, 0), "not resolved") != nullptr);
  dr_table_destroy(warn);
  dr_table ed = nullptr;
  REQUIRE(dr_exact_diag(v, 32, 8.0, 2, 2, 0, &ed) == DR_OK);
  double e_ed = 0;
  REQUIRE(dr_table_value(ed, 0, 1, &e_ed) == DR_OK);
  CHECK(e_ed == doctest::Approx(e.total).epsilon(1e-6));
  dr_table_destroy(ed);
  const int modes[] = {0, 1};
  CHECK(dr_lattice_pt(v, 32, 8.0, 2, modes, 2, &e, nullptr) == DR_INVALID_ARGUMENT);
  dr_potential_destroy(v);
  dr_profile_destroy(p);

  const double a[] = {0.1, 0.2, 0.3}, y[] = {1.1, 1.2, 1.3};
  double value = 0, slope = 0;
  REQUIRE(dr_extrapolate_linear(a, y, 3, &value, &slope) == DR_OK);
  CHECK(value == doctest::Approx(1.0));
  CHECK(slope == doctest::Approx(1.0));
}

TEST_CASE("Bethe ground state") {
  dr_table t = nullptr;
  REQUIRE(dr_bethe_ground(4, 4.0, 1e9, &t) == DR_OK);
  CHECK(scalar(t, "energy_density") == doctest::Approx(M_PI * M_PI / 3 * (1 - 1.0 / 16)).epsilon(1e-8));
  CHECK(dr_table_rows(t) == 4);
  dr_table_destroy(t);
  CHECK(dr_bethe_ground(0, 4.0, 1.0, &t) == DR_INVALID_ARGUMENT);
}

TEST_CASE("thresholds and acceptance") {
  dr_thresholds th = nullptr;
  REQUIRE(dr_thresholds_create(&th) == DR_OK);
  REQUIRE(dr_thresholds_count() > 0);
  double v = 0;
  REQUIRE(dr_thresholds_get(th, "c1_max_rel_error", &v) == DR_OK);
  CHECK(v == 1e-9);
  CHECK(dr_thresholds_set(th, "no_such_threshold", 1.0) == DR_INVALID_ARGUMENT);
  CHECK(dr_thresholds_set(th, "c1_max_rel_error", NAN) == DR_INVALID_ARGUMENT);
  for (size_t i = 0; i < dr_thresholds_count(); ++i) CHECK(dr_thresholds_get(th, dr_thresholds_name(i), &v) == DR_OK);
  CHECK(dr_thresholds_name(dr_thresholds_count()) == nullptr);

  CHECK(dr_criterion_count() == 11);
  CHECK(dr_criterion_name(0) == nullptr);
  int pass = -1;
  dr_table t = nullptr;
  REQUIRE(dr_acceptance_run(1, th, &pass, &t) == DR_OK);
  CHECK(pass == 1);
  REQUIRE(dr_table_note_count(t) >= 1);
  CHECK(std::string(dr_table_note(t, 0)).rfind("PASS [1]", 0) == 0);
  dr_table_destroy(t);

  // An impossible tolerance turns the same run into a failure, not an error.
  REQUIRE(dr_thresholds_set(th, "c1_max_rel_error", 1e-30) == DR_OK);
  REQUIRE(dr_acceptance_run(1, th, &pass, &t) == DR_OK);
  CHECK(pass == 0);
  CHECK(std::string(dr_table_note(t, 0)).rfind("FAIL [1]", 0) == 0);
  dr_table_destroy(t);
  CHECK(dr_acceptance_run(12, nullptr, &pass, &t) == DR_OUT_OF_RANGE);
  dr_thresholds_destroy(th);
}
