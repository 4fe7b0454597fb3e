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

// Plumbing shared by the CLI commands: RAII over the C handles, exit-code
// classes, CSV and sidecar emission, and the PASS/FAIL report.

#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dualreg/dualreg.h"
#include "json.hpp"

namespace cli {

using json = nlohmann::json;

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kAcceptance = 4 };

// Carries the exit code class of a failed call.
class Failure : public std::runtime_error {
 public:
  Failure(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Throws Failure for anything but DR_OK. Argument errors map to the config
// class, everything else to numerical failure.
void check(dr_status s, const std::string& where);
[[noreturn]] void config_error(const std::string& field, const std::string& reason);

template <class H, void (*Destroy)(H)>
struct Deleter {
  void operator()(H h) const { Destroy(h); }
};

using Profile = std::unique_ptr<dr_profile_t, Deleter<dr_profile, dr_profile_destroy>>;
using Potential = std::unique_ptr<dr_potential_t, Deleter<dr_potential, dr_potential_destroy>>;
using Density = std::unique_ptr<dr_density_t, Deleter<dr_density, dr_density_destroy>>;
using Table = std::unique_ptr<dr_table_t, Deleter<dr_table, dr_table_destroy>>;
using Thresholds = std::unique_ptr<dr_thresholds_t, Deleter<dr_thresholds, dr_thresholds_destroy>>;

Profile make_profile(const std::string& name);
Potential make_potential(dr_potential_kind kind, const Profile& profile, double a, double beta);
dr_potential_kind parse_kind(const std::string& name);

double scalar(const Table& t, const char* name);
std::vector<double> column(const Table& t, const char* name);

// Column-oriented CSV builder with fixed %.17g formatting.
class Csv {
 public:
  void add(const std::string& name, std::vector<double> values);
  void add_table(const Table& t);
  std::size_t rows() const;
  std::string str() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> cols_;
};

struct Context {
  std::string out_dir = "out";
  unsigned threads = 1;
  Thresholds thresholds;
  std::string command;
  json config;  // resolved options, filled before the command runs
  bool acceptance_failed = false;

  double threshold(const char* name) const;
  // Writes name under out_dir plus a name.json sidecar with the resolved
  // config and library version. JSON documents carry the same under "meta".
  void emit(const std::string& name, const std::string& contents) const;
  void emit_csv(const std::string& name, const Csv& csv) const { emit(name, csv.str()); }
  void emit_json(const std::string& name, json doc) const;
  // Prints "PASS <check>: <detail>" or FAIL, and records failures.
  void report(const std::string& check, bool pass, const std::string& detail);
};

// Reads JSON when the file starts with '{', TOML otherwise.
class JsonOrTomlConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

// Options of app and of the selected subcommand, as JSON.
json resolved_options(const CLI::App& app, const CLI::App& sub);

std::string format(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0);

}  // namespace cli
