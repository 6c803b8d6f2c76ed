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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "starris/analysis.hpp"
#include "starris/beamform.hpp"
#include "starris/channel.hpp"
#include "starris/surface.hpp"

namespace starris {

// Resolved scenario document. Every field has a default; the JSON form
// mirrors these sections one-to-one and rejects unknown keys.
struct Scenario {
  struct ApertureSection {
    std::size_t rows = 16;
    std::size_t cols = 16;
    double spacing_in_wavelengths = 0.5;
    double wavelength_m = 0.01;
  } aperture;

  struct SurfaceSection {
    SurfaceKind kind = SurfaceKind::Star;
    double beta_t = 0.5;
    double beta_r = 0.5;
    std::size_t m_t = 0;
    std::size_t m_r = 0;
    bool lossless_override = false;
  } surface;

  struct SteeringSection {
    bool enabled = true;
    double angle_t_deg = 0.0;
    double angle_r_deg = 0.0;
    double azimuth_deg = 0.0;
    Vec3 tx_position_m{0.0, 0.0, -1.0};
    Incidence incidence = Incidence::Spherical;
  } steering;

  PathLossModel pathloss;

  struct FadingSection {
    double k_s = 1.0;
    double omega_s = 1.0;
    double k_d = 1.0;
    double omega_d = 1.0;
  } fading;

  LinkBudget budget;

  struct RunSection {
    std::uint64_t seed = 1;
    std::uint64_t trials = 100000;
    std::uint64_t max_trials = 10000000;
    std::uint64_t min_events = 50;
    double gamma_t_start_db = 0.0;
    double gamma_t_stop_db = 30.0;
    double gamma_t_step_db = 2.0;
    bool include_leaning = true;
    bool beta_in_pdf = true;
    bool oracle = true;
    std::size_t oracle_resolution = 4096;
    double tail_fraction = 0.4;
    std::vector<Side> groups{Side::Transmit, Side::Reflect};
    std::string fit_source = "asymptotic";  // asymptotic | mc | oracle

    // Coverage planes, in wavelengths: x in [-extent, extent], |z| in
    // [near, extent], resolution x resolution cells per side.
    double grid_extent_wavelengths = 675.0;
    double grid_near_wavelengths = 1.0;
    std::size_t grid_resolution = 200;
    double peak_min_radius_wavelengths = 0.0;  // 0: field boundary

    // Gain profile along the line d * (sin a, 0, -cos a); d > 0 is the
    // reflection side.
    double profile_angle_deg = 60.0;
    double profile_d_min_wavelengths = 0.1;
    double profile_d_max_wavelengths = 1000.0;
    std::size_t profile_points = 200;  // per side
    bool profile_log_spacing = true;
  } run;

  std::size_t element_count() const { return aperture.rows * aperture.cols; }
  double spacing_m() const { return aperture.spacing_in_wavelengths * aperture.wavelength_m; }
  Aperture make_aperture() const;
  SteeringSpec steering_spec() const;
  // Surface with cophase steering applied (zero phases when steering is off).
  SurfaceConfig make_surface() const;
  OutageScenario outage_scenario(Side group) const;
  std::vector<double> gamma_t_sweep_db() const;
};

// Parses and schema-checks a JSON scenario. Unknown keys, wrong types and
// out-of-range values raise Error(ErrorCode::Schema).
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario_file(const std::string& path);
Scenario load_preset(std::string_view name);
std::vector<std::string> preset_names();

// Canonical JSON of the resolved scenario (defaults filled in, sorted keys).
// parse_scenario() accepts it back unchanged.
std::string scenario_to_json(const Scenario& scenario, int indent = 2);

// FNV-1a 64 of the compact canonical JSON; identifies a resolved scenario.
std::string scenario_hash(const Scenario& scenario);

}  // namespace starris
