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

// Acceptance checks 1-11. Each runs a fixed experiment, records the measured
// quantities and compares them against thresholds that callers may override.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualreg {

struct AcceptanceThresholds {
  double c1_max_rel_error = 1e-9;
  double c1_max_seconds = 1.0;
  double c2_rel_tol = 0.05;
  double c3_rel_tol = 0.05;
  double c3_max_seconds_per_point = 10.0;
  double c4_rel_tol = 0.05;
  double c5_naive_max = 1e-2;
  double c5_first_order_rel_tol = 0.02;
  double c6_min_ratio = 3.0;
  double c6_points = 1e5;
  double c6_max_seconds = 300.0;
  double c7_slope = 4.0;
  double c7_slope_tol = 0.3;
  double c8_cancellation = 0.01;
  double c8_analytic_rel_tol = 0.005;
  double c9_rel_tol = 1e-4;
  double c10_slope = 3.0;
  double c10_slope_tol = 0.3;
  double c10_max_seconds = 120.0;
  double c11_p = -4.0;
  double c11_p_tol = 0.04;
  double c11_q = 12.0;
  double c11_q_tol = 0.24;

  struct Field {
    const char* name;
    double AcceptanceThresholds::*member;
  };
  static const std::vector<Field>& fields();
  // InvalidArgument for an unknown name.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<std::pair<std::string, double>> metrics;
  double seconds = 0.0;
  std::string error;  // set when the experiment itself threw
};

constexpr int kCriterionCount = 11;

const char* criterion_name(int id);

// Runs criterion id in [1, kCriterionCount]. Numerical errors raised by the
// experiment are caught and reported as a failing result.
CriterionResult run_criterion(int id, const AcceptanceThresholds& t = {});

// "PASS [3] jump condition, three profiles: <summary>".
std::string format_result_line(const CriterionResult& r);

}  // namespace dualreg
