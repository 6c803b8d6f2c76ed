// SPDX-License-Identifier: Apache-2.0
//
// starris: STAR-RIS channel modelling and outage analysis
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "starris/starris.h"

namespace {

struct Options {
  std::string scenario;
  std::string preset;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 1;
};

void add_common(CLI::App* cmd, Options& opt, bool writes_files) {
  auto* group = cmd->add_option_group("source", "scenario source");
  group->add_option("--scenario", opt.scenario, "scenario JSON file");
  group->add_option("--preset", opt.preset, "bundled preset name (see `starris presets`)");
  group->require_option(1);
  if (writes_files) {
    cmd->add_option("--out", opt.out, "output directory (default: $STARRIS_OUT_DIR or .)");
    cmd->add_option("--seed", opt.seed, "override run.seed")->each([&](const std::string&) {
      opt.seed_set = true;
    });
    cmd->add_option("--workers", opt.workers, "worker threads; outputs do not depend on it")
        ->check(CLI::Range(1, 1024));
  }
}

int run(starris_command command, const Options& opt) {
  starris_scenario* scenario = nullptr;
  const starris_status st = opt.preset.empty()
                                ? starris_scenario_load_file(opt.scenario.c_str(), &scenario)
                                : starris_scenario_load_preset(opt.preset.c_str(), &scenario);
  if (st != STARRIS_OK) {
    std::cerr << "error: " << starris_status_string(st) << ": " << starris_last_error() << "\n";
    return 2;
  }
  if (opt.seed_set) starris_scenario_set_seed(scenario, opt.seed);

  std::string out_dir = opt.out;
  if (out_dir.empty()) {
    const char* env = std::getenv("STARRIS_OUT_DIR");
    out_dir = env && *env ? env : ".";
  }

  starris_result* result = nullptr;
  const starris_status rs = starris_run(scenario, command, out_dir.c_str(), opt.workers, &result);
  starris_scenario_destroy(scenario);
  if (rs != STARRIS_OK) {
    std::cerr << "error: " << starris_status_string(rs) << ": " << starris_last_error() << "\n";
    return 3;
  }
  const int code = starris_result_exit_code(result);
  (code >= 2 ? std::cerr : std::cout) << starris_result_report(result);
  for (std::size_t i = 0; i < starris_result_file_count(result); ++i) {
    std::cout << "wrote " << starris_result_file(result, i) << "\n";
  }
  starris_result_destroy(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starris: STAR-RIS channel models and outage analysis"};
  app.set_version_flag("--version", starris_version());
  app.require_subcommand(1);

  Options opt;
  auto* coverage = app.add_subcommand("coverage", "coverage maps of both sides and beam peaks");
  add_common(coverage, opt, true);
  auto* profile = app.add_subcommand("gain-profile", "near/far-field gain along a line cut");
  add_common(profile, opt, true);
  auto* outage = app.add_subcommand("outage", "outage curves and diversity orders");
  add_common(outage, opt, true);
  auto* validate = app.add_subcommand("validate", "schema check and physics lint");
  add_common(validate, opt, false);
  auto* boundary =
      app.add_subcommand("boundary", "print the near/far-field boundary 2 L_a^2 / lambda");
  add_common(boundary, opt, false);
  auto* presets = app.add_subcommand("presets", "list bundled presets");

  CLI11_PARSE(app, argc, argv);

  if (*presets) {
    for (std::size_t i = 0; i < starris_preset_count(); ++i)
      std::cout << starris_preset_name(i) << "\n";
    return 0;
  }
  if (*coverage) return run(STARRIS_CMD_COVERAGE, opt);
  if (*profile) return run(STARRIS_CMD_GAIN_PROFILE, opt);
  if (*outage) return run(STARRIS_CMD_OUTAGE, opt);
  if (*validate) return run(STARRIS_CMD_VALIDATE, opt);
  return run(STARRIS_CMD_BOUNDARY, opt);
}
