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

#include "cli_support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace cli {

void check(dr_status s, const std::string& where) {
  if (s == DR_OK) return;
  const std::string msg = where + ": " + dr_status_name(s) + ": " + dr_last_error();
  const bool config = s == DR_INVALID_ARGUMENT || s == DR_UNKNOWN_PROFILE || s == DR_NULL_HANDLE ||
                      s == DR_OUT_OF_RANGE || s == DR_ADMISSIBILITY_VIOLATION;
  throw Failure(config ? kConfig : kNumerical, msg);
}

void config_error(const std::string& field, const std::string& reason) {
  throw Failure(kConfig, "ConfigError: " + field + ": " + reason);
}

Profile make_profile(const std::string& name) {
  dr_profile p = nullptr;
  check(dr_profile_create(name.c_str(), &p), "--profile");
  return Profile(p);
}

Potential make_potential(dr_potential_kind kind, const Profile& profile, double a, double beta) {
  dr_potential p = nullptr;
  check(dr_potential_create(kind, profile.get(), a, beta, 0.0, &p), "potential");
  return Potential(p);
}

dr_potential_kind parse_kind(const std::string& name) {
  if (name == "duality") return DR_DUALITY_PRESERVING;
  if (name == "cheon") return DR_CHEON_SHIGEHARA;
  config_error("--kind", "expected duality or cheon, got " + name);
}

double scalar(const Table& t, const char* name) {
  double v = 0.0;
  check(dr_table_scalar(t.get(), name, &v), std::string("result ") + name);
  return v;
}

std::vector<double> column(const Table& t, const char* name) {
  for (size_t j = 0; j < dr_table_cols(t.get()); ++j) {
    if (std::string(dr_table_column_name(t.get(), j)) != name) continue;
    const double* data = nullptr;
    check(dr_table_column(t.get(), j, &data), name);
    return std::vector<double>(data, data + dr_table_rows(t.get()));
  }
  throw Failure(kNumerical, std::string("result has no column ") + name);
}

void Csv::add(const std::string& name, std::vector<double> values) {
  if (!cols_.empty() && values.size() != cols_.front().size())
    throw Failure(kNumerical, "csv column " + name + " has the wrong length");
  names_.push_back(name);
  cols_.push_back(std::move(values));
}

void Csv::add_table(const Table& t) {
  for (size_t j = 0; j < dr_table_cols(t.get()); ++j) {
    const char* name = dr_table_column_name(t.get(), j);
    add(name, column(t, name));
  }
}

std::size_t Csv::rows() const { return cols_.empty() ? 0 : cols_.front().size(); }

std::string Csv::str() const {
  std::string s;
  for (std::size_t j = 0; j < names_.size(); ++j) s += (j ? "," : "") + names_[j];
  s += '\n';
  char buf[32];
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", cols_[j][i]);
      if (j) s += ',';
      s += buf;
    }
    s += '\n';
  }
  return s;
}

double Context::threshold(const char* name) const {
  double v = 0.0;
  check(dr_thresholds_get(thresholds.get(), name, &v), name);
  return v;
}

namespace {

json metadata(const Context& ctx) { return {{"command", ctx.command}, {"version", dr_version()}, {"config", ctx.config}}; }

std::filesystem::path output_path(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) config_error("--out", "cannot create " + dir + ": " + ec.message());
  return std::filesystem::path(dir) / name;
}

}  // namespace

void Context::emit(const std::string& name, const std::string& contents) const {
  const auto path = output_path(out_dir, name);
  std::ofstream(path, std::ios::binary) << contents;
  json side = metadata(*this);
  side["file"] = name;
  std::ofstream(path.string() + ".json", std::ios::binary) << side.dump(2) << '\n';
  std::cerr << "wrote " << path.string() << '\n';
}

void Context::emit_json(const std::string& name, json doc) const {
  const auto path = output_path(out_dir, name);
  doc["meta"] = metadata(*this);
  std::ofstream(path, std::ios::binary) << doc.dump(2) << '\n';
  std::cerr << "wrote " << path.string() << '\n';
}

void Context::report(const std::string& check, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS " : "FAIL ") << check << ": " << detail << std::endl;
  if (!pass) acceptance_failed = true;
}

namespace {

void flatten(const json& j, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      parents.push_back(it.key());
      flatten(*it, parents, out);
      parents.pop_back();
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = it.key();
    auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (it->is_array())
      for (const auto& v : *it) item.inputs.push_back(str(v));
    else
      item.inputs.push_back(str(*it));
    out.push_back(std::move(item));
  }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonOrTomlConfig::from_config(std::istream& input) const {
  const std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::istringstream again(text);
    return CLI::ConfigTOML::from_config(again);
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CLI::ConfigError(std::string("config: ") + e.what());
  }
  std::vector<CLI::ConfigItem> items;
  std::vector<std::string> parents;
  flatten(j, parents, items);
  return items;
}

json resolved_options(const CLI::App& app, const CLI::App& sub) {
  json out = json::object();
  auto collect = [](const CLI::App& a, json& dst) {
    for (const CLI::Option* opt : a.get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name == "config" || name == "version") continue;
      const auto& res = opt->results();
      if (res.empty())
        dst[name] = opt->get_default_str();
      else if (res.size() == 1)
        dst[name] = res.front();
      else
        dst[name] = res;
    }
  };
  collect(app, out);
  collect(sub, out[sub.get_name()]);
  return out;
}

std::string format(const char* f, double a, double b, double c, double d) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace cli
