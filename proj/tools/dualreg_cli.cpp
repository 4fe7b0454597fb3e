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

#include <iostream>
#include <thread>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace cli;
  CLI::App app{"Duality-preserving regularization of the fermionic point interaction: experiments and checks."};
  app.footer(
      "Exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 acceptance check failed.\n"
      "Config files (TOML or JSON) set top-level options and, under a section named after the\n"
      "command, command options. Flags given on the command line win.");
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonOrTomlConfig>());
  app.set_config("--config", "", "TOML or JSON configuration file");
  app.set_version_flag("--version", std::string("dualreg ") + dr_version());

  Context ctx;
  dr_thresholds th = nullptr;
  check(dr_thresholds_create(&th), "thresholds");
  ctx.thresholds.reset(th);

  unsigned hw = std::thread::hardware_concurrency();
  ctx.threads = hw > 0 ? hw : 1;
  app.add_option("--out", ctx.out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", ctx.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));

  // One option per acceptance threshold, defaulting to the library value.
  std::vector<std::pair<std::string, double>> thresholds;
  for (size_t i = 0; i < dr_thresholds_count(); ++i) thresholds.emplace_back(dr_thresholds_name(i), 0.0);
  for (auto& [name, value] : thresholds) {
    dr_thresholds_get(th, name.c_str(), &value);
    app.add_option("--" + name, value, "acceptance threshold")->capture_default_str()->group("Thresholds");
  }

  const std::vector<Command> commands = register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    for (const auto& [name, value] : thresholds) check(dr_thresholds_set(th, name.c_str(), value), "--" + name);
    for (const Command& c : commands) {
      if (!c.app->parsed()) continue;
      ctx.command = c.app->get_name();
      ctx.config = resolved_options(app, *c.app);
      c.run(ctx);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what() << '\n';
    return f.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return ctx.acceptance_failed ? kAcceptance : kOk;
}
