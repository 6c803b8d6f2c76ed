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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "starris/analysis.hpp"
#include "starris/beamform.hpp"
#include "starris/channel.hpp"
#include "starris/scenario.hpp"

namespace starris {

// Process exit statuses shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitWarnings = 1;  // validate only
inline constexpr int kExitSchema = 2;
inline constexpr int kExitCompute = 3;
inline constexpr int kExitFitFailed = 4;

// Lint codes reported by validate (stable identifiers):
//   errors:   PASSIVITY, PARTITION
//   warnings: LOSSLESS, NEARFIELD, COVERAGE_RADIUS, MC_BUDGET, UNSERVED
struct LintFinding {
  bool error = false;
  std::string code;
  std::string message;
};

std::vector<LintFinding> lint_scenario(const Scenario& scenario);

struct CommandResult {
  int exit_code = kExitOk;
  std::string report;
  std::vector<std::string> files;
};

CommandResult cmd_validate(const Scenario& scenario);
CommandResult cmd_boundary(const Scenario& scenario);
CommandResult cmd_coverage(const Scenario& scenario, const std::string& out_dir, int workers = 1);
CommandResult cmd_gain_profile(const Scenario& scenario, const std::string& out_dir,
                               int workers = 1);
CommandResult cmd_outage(const Scenario& scenario, const std::string& out_dir, int workers = 1);

struct CoverageSide {
  Side side = Side::Transmit;
  CoveragePlane plane;
  std::vector<double> grid;
  BeamPeak peak;
};

struct CoverageResult {
  double field_boundary = 0.0;
  double min_radius = 0.0;
  std::vector<CoverageSide> sides;  // transmit side first
};

CoverageResult compute_coverage(const Scenario& scenario, int workers = 1);

struct ProfileRow {
  double d = 0.0;  // signed; d > 0 on the reflection side
  double near_leaning = 0.0;
  double near_plain = 0.0;  // leaning factor forced to 1
  double far = 0.0;
};

struct GainProfile {
  std::vector<ProfileRow> rows;
  std::size_t excluded = 0;  // samples rejected by the minimum-distance guard
  double field_boundary = 0.0;
};

// Point on the profile line at signed distance d.
Vec3 profile_point(const Scenario& scenario, double d);
GainProfile compute_gain_profile(const Scenario& scenario, int workers = 1);

struct OutageRow {
  double gamma_t_db = 0.0;
  std::optional<OutageEstimate> mc;
  double asymptotic = 0.0;
  std::optional<double> oracle;
};

struct OutageTable {
  SurfaceKind kind = SurfaceKind::Star;
  Side group = Side::Transmit;
  std::vector<OutageRow> rows;
};

std::vector<OutageTable> compute_outage(const Scenario& scenario, int workers = 1);

struct DiversityFit {
  std::optional<double> asymptotic;
  std::optional<double> mc;
  std::optional<double> oracle;
};

DiversityFit fit_diversity(const OutageTable& table, double tail_fraction);

}  // namespace starris
