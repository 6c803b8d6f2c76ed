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

#include "starris/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "scenario_json.hpp"
#include "starris/error.hpp"

namespace starris {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_presets();
}

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::Schema, what); }

// Strict view over one JSON object: every key must be consumed by a reader
// or listed, anything else is rejected.
class SectionReader {
 public:
  SectionReader(const json& root, std::string name) : name_(std::move(name)) {
    if (!root.contains(name_)) return;
    node_ = &root.at(name_);
    if (!node_->is_object()) schema_error(name_ + ": expected an object");
  }

  SectionReader(const json& node, std::string name, bool) : name_(std::move(name)), node_(&node) {
    if (!node_->is_object()) schema_error(name_ + ": expected an object");
  }

  const json* find(const std::string& key) {
    known_.insert(key);
    if (node_ == nullptr || !node_->contains(key)) return nullptr;
    return &node_->at(key);
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) schema_error(path(key) + ": expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) schema_error(path(key) + ": must be finite");
    }
  }

  template <typename T>
  void count(const std::string& key, T& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        schema_error(path(key) + ": expected a non-negative integer");
      }
      out = static_cast<T>(v->get<unsigned long long>());
    }
  }

  void flag(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) schema_error(path(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) schema_error(path(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& item : node_->items()) {
      if (!known_.contains(item.key())) schema_error(name_ + ": unknown key '" + item.key() + "'");
    }
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> known_;
};

void require(bool ok, const std::string& what) {
  if (!ok) schema_error(what);
}

Side parse_side(const std::string& s, const std::string& where) {
  if (s == "T") return Side::Transmit;
  if (s == "R") return Side::Reflect;
  schema_error(where + ": expected \"T\" or \"R\", got \"" + s + "\"");
}

void check_ranges(const Scenario& s) {
  require(s.aperture.rows >= 1 && s.aperture.cols >= 1, "aperture: rows and cols must be >= 1");
  require(s.aperture.spacing_in_wavelengths > 0.0, "aperture.spacing_in_wavelengths must be > 0");
  require(s.aperture.wavelength_m > 0.0, "aperture.wavelength_m must be > 0");
  require(s.surface.beta_t >= 0.0 && s.surface.beta_t <= 1.0, "surface.beta_t must lie in [0, 1]");
  require(s.surface.beta_r >= 0.0 && s.surface.beta_r <= 1.0, "surface.beta_r must lie in [0, 1]");
  require(std::abs(s.steering.angle_t_deg) < 90.0 && std::abs(s.steering.angle_r_deg) < 90.0,
          "steering angles must lie in (-90, 90) degrees");
  require(s.steering.tx_position_m.z < 0.0, "steering.tx_position_m must have z < 0");
  require(s.pathloss.alpha_0 >= 0.0 && s.pathloss.alpha_t >= 0.0 && s.pathloss.alpha_r >= 0.0,
          "pathloss exponents must be >= 0");
  require(s.pathloss.c0 > 0.0, "pathloss.c0 must be > 0");
  require(s.fading.k_s >= 0.0 && s.fading.k_d >= 0.0, "fading K factors must be >= 0");
  require(s.fading.omega_s > 0.0 && s.fading.omega_d > 0.0, "fading Omega values must be > 0");
  require(s.budget.w_k > 0.0 && s.budget.sigma0_sq > 0.0 && s.budget.gamma_k > 0.0,
          "budget values must be > 0");
  const auto& r = s.run;
  require(r.trials >= 10000, "run.trials must be >= 10000");
  require(r.max_trials >= r.trials, "run.max_trials must be >= run.trials");
  require(r.min_events >= 1, "run.min_events must be >= 1");
  require(r.gamma_t_step_db > 0.0, "run.gamma_t_sweep_db.step must be > 0");
  require(r.gamma_t_stop_db >= r.gamma_t_start_db, "run.gamma_t_sweep_db: stop must be >= start");
  require((r.gamma_t_stop_db - r.gamma_t_start_db) / r.gamma_t_step_db < 1e5,
          "run.gamma_t_sweep_db: too many points");
  require(r.oracle_resolution >= 4096, "run.oracle_resolution must be >= 4096");
  require(r.tail_fraction > 0.0 && r.tail_fraction <= 1.0, "run.tail_fraction must lie in (0, 1]");
  require(!r.groups.empty(), "run.groups must name at least one group");
  require(r.fit_source == "asymptotic" || r.fit_source == "mc" || r.fit_source == "oracle",
          "run.fit_source must be asymptotic, mc or oracle");
  require(r.grid_extent_wavelengths > 0.0, "run.grid.extent_wavelengths must be > 0");
  require(r.grid_near_wavelengths > 0.0 && r.grid_near_wavelengths < r.grid_extent_wavelengths,
          "run.grid.near_wavelengths must lie in (0, extent)");
  require(r.grid_resolution >= 2 && r.grid_resolution <= 4000,
          "run.grid.resolution must lie in [2, 4000]");
  require(r.peak_min_radius_wavelengths >= 0.0,
          "run.grid.peak_min_radius_wavelengths must be >= 0");
  require(std::abs(r.profile_angle_deg) < 90.0, "run.profile.angle_deg must lie in (-90, 90)");
  require(r.profile_d_min_wavelengths > 0.0 &&
              r.profile_d_max_wavelengths > r.profile_d_min_wavelengths,
          "run.profile: need 0 < d_min_wavelengths < d_max_wavelengths");
  require(r.profile_points >= 2 && r.profile_points <= 100000,
          "run.profile.points must lie in [2, 100000]");
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("scenario must be a JSON object");

  static const std::set<std::string> sections{"aperture", "surface", "steering", "pathloss",
                                              "fading",   "budget",  "run",      "description"};
  for (const auto& item : root.items()) {
    if (!sections.contains(item.key())) schema_error("unknown section '" + item.key() + "'");
  }
  if (root.contains("description") && !root.at("description").is_string()) {
    schema_error("description: expected a string");
  }

  Scenario s;
  {
    SectionReader r(root, "aperture");
    r.count("rows", s.aperture.rows);
    r.count("cols", s.aperture.cols);
    r.number("spacing_in_wavelengths", s.aperture.spacing_in_wavelengths);
    r.number("wavelength_m", s.aperture.wavelength_m);
    r.finish();
  }
  {
    SectionReader r(root, "surface");
    std::string kind = "star";
    r.text("kind", kind);
    if (kind == "star") {
      s.surface.kind = SurfaceKind::Star;
    } else if (kind == "conventional") {
      s.surface.kind = SurfaceKind::Conventional;
    } else {
      schema_error("surface.kind: expected \"star\" or \"conventional\", got \"" + kind + "\"");
    }
    r.number("beta_t", s.surface.beta_t);
    r.number("beta_r", s.surface.beta_r);
    r.count("m_t", s.surface.m_t);
    r.count("m_r", s.surface.m_r);
    r.flag("lossless_override", s.surface.lossless_override);
    r.finish();
  }
  {
    SectionReader r(root, "steering");
    r.flag("enabled", s.steering.enabled);
    r.number("angle_t_deg", s.steering.angle_t_deg);
    r.number("angle_r_deg", s.steering.angle_r_deg);
    r.number("azimuth_deg", s.steering.azimuth_deg);
    if (const json* v = r.find("tx_position_m")) {
      if (!v->is_array() || v->size() != 3 ||
          !std::all_of(v->begin(), v->end(), [](const json& e) { return e.is_number(); })) {
        schema_error("steering.tx_position_m: expected an array of three numbers");
      }
      s.steering.tx_position_m = {(*v)[0].get<double>(), (*v)[1].get<double>(),
                                  (*v)[2].get<double>()};
    }
    std::string incidence = "spherical";
    r.text("incidence", incidence);
    if (incidence == "spherical") {
      s.steering.incidence = Incidence::Spherical;
    } else if (incidence == "plane") {
      s.steering.incidence = Incidence::Plane;
    } else {
      schema_error("steering.incidence: expected \"spherical\" or \"plane\"");
    }
    r.finish();
  }
  {
    SectionReader r(root, "pathloss");
    r.number("alpha_0", s.pathloss.alpha_0);
    r.number("alpha_t", s.pathloss.alpha_t);
    r.number("alpha_r", s.pathloss.alpha_r);
    r.number("c0", s.pathloss.c0);
    r.finish();
  }
  {
    SectionReader r(root, "fading");
    r.number("k_s", s.fading.k_s);
    r.number("omega_s", s.fading.omega_s);
    r.number("k_d", s.fading.k_d);
    r.number("omega_d", s.fading.omega_d);
    r.finish();
  }
  {
    SectionReader r(root, "budget");
    r.number("w_k", s.budget.w_k);
    r.number("sigma0_sq", s.budget.sigma0_sq);
    r.number("gamma_k", s.budget.gamma_k);
    r.finish();
  }
  {
    SectionReader r(root, "run");
    auto& run = s.run;
    r.count("seed", run.seed);
    r.count("trials", run.trials);
    r.count("max_trials", run.max_trials);
    r.count("min_events", run.min_events);
    if (const json* v = r.find("gamma_t_sweep_db")) {
      SectionReader sweep(*v, "run.gamma_t_sweep_db", true);
      sweep.number("start", run.gamma_t_start_db);
      sweep.number("stop", run.gamma_t_stop_db);
      sweep.number("step", run.gamma_t_step_db);
      sweep.finish();
    }
    r.flag("include_leaning", run.include_leaning);
    r.flag("beta_in_pdf", run.beta_in_pdf);
    r.flag("oracle", run.oracle);
    r.count("oracle_resolution", run.oracle_resolution);
    r.number("tail_fraction", run.tail_fraction);
    if (const json* v = r.find("groups")) {
      if (!v->is_array()) schema_error("run.groups: expected an array");
      run.groups.clear();
      for (const auto& g : *v) {
        if (!g.is_string()) schema_error("run.groups: expected strings");
        run.groups.push_back(parse_side(g.get<std::string>(), "run.groups"));
      }
    }
    r.text("fit_source", run.fit_source);
    if (const json* v = r.find("grid")) {
      SectionReader grid(*v, "run.grid", true);
      grid.number("extent_wavelengths", run.grid_extent_wavelengths);
      grid.number("near_wavelengths", run.grid_near_wavelengths);
      grid.count("resolution", run.grid_resolution);
      grid.number("peak_min_radius_wavelengths", run.peak_min_radius_wavelengths);
      grid.finish();
    }
    if (const json* v = r.find("profile")) {
      SectionReader prof(*v, "run.profile", true);
      prof.number("angle_deg", run.profile_angle_deg);
      prof.number("d_min_wavelengths", run.profile_d_min_wavelengths);
      prof.number("d_max_wavelengths", run.profile_d_max_wavelengths);
      prof.count("points", run.profile_points);
      std::string spacing = "log";
      prof.text("spacing", spacing);
      if (spacing != "log" && spacing != "linear") {
        schema_error("run.profile.spacing: expected \"log\" or \"linear\"");
      }
      run.profile_log_spacing = spacing == "log";
      prof.finish();
    }
    r.finish();
  }
  check_ranges(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Scenario load_preset(std::string_view name) {
  for (const auto& [key, text] : detail::embedded_presets()) {
    if (key == name) return parse_scenario(text);
  }
  schema_error("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [key, text] : detail::embedded_presets()) names.emplace_back(key);
  return names;
}

Aperture Scenario::make_aperture() const {
  return Aperture(aperture.rows, aperture.cols, spacing_m(), aperture.wavelength_m);
}

SteeringSpec Scenario::steering_spec() const {
  SteeringSpec spec;
  spec.angle_t = deg2rad(steering.angle_t_deg);
  spec.angle_r = deg2rad(steering.angle_r_deg);
  spec.azimuth = deg2rad(steering.azimuth_deg);
  spec.tx_position = steering.tx_position_m;
  spec.incidence = steering.incidence;
  return spec;
}

SurfaceConfig Scenario::make_surface() const {
  const Aperture ap = make_aperture();
  std::vector<double> t_phases(ap.size(), 0.0);
  std::vector<double> r_phases(ap.size(), 0.0);
  if (steering.enabled) {
    t_phases = cophase_phases(ap, steering_spec(), Side::Transmit);
    r_phases = cophase_phases(ap, steering_spec(), Side::Reflect);
  }
  if (surface.kind == SurfaceKind::Conventional) {
    return conventional_surface(ap, surface.m_t, surface.m_r, t_phases, r_phases);
  }
  return uniform_star_surface(ap, surface.beta_t, surface.beta_r, t_phases, r_phases,
                              surface.lossless_override);
}

OutageScenario Scenario::outage_scenario(Side group) const {
  OutageScenario o;
  o.kind = surface.kind;
  o.m = element_count();
  o.beta_t = surface.beta_t;
  o.beta_r = surface.beta_r;
  o.m_t = surface.m_t;
  o.m_r = surface.m_r;
  o.group = group;
  o.surface = {fading.k_s, fading.omega_s};
  o.direct = {fading.k_d, fading.omega_d};
  o.budget = budget;
  o.lossless_override = surface.lossless_override;
  o.beta_in_pdf = run.beta_in_pdf;
  return o;
}

std::vector<double> Scenario::gamma_t_sweep_db() const {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(
      std::floor((run.gamma_t_stop_db - run.gamma_t_start_db) / run.gamma_t_step_db + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(run.gamma_t_start_db + static_cast<double>(i) * run.gamma_t_step_db);
  }
  return out;
}

namespace detail {

json scenario_json(const Scenario& s) {
  json j;
  j["aperture"] = {{"rows", s.aperture.rows},
                   {"cols", s.aperture.cols},
                   {"spacing_in_wavelengths", s.aperture.spacing_in_wavelengths},
                   {"wavelength_m", s.aperture.wavelength_m}};
  j["surface"] = {{"kind", s.surface.kind == SurfaceKind::Star ? "star" : "conventional"},
                  {"beta_t", s.surface.beta_t},
                  {"beta_r", s.surface.beta_r},
                  {"m_t", s.surface.m_t},
                  {"m_r", s.surface.m_r},
                  {"lossless_override", s.surface.lossless_override}};
  const auto& tx = s.steering.tx_position_m;
  j["steering"] = {
      {"enabled", s.steering.enabled},
      {"angle_t_deg", s.steering.angle_t_deg},
      {"angle_r_deg", s.steering.angle_r_deg},
      {"azimuth_deg", s.steering.azimuth_deg},
      {"tx_position_m", {tx.x, tx.y, tx.z}},
      {"incidence", s.steering.incidence == Incidence::Spherical ? "spherical" : "plane"}};
  j["pathloss"] = {{"alpha_0", s.pathloss.alpha_0},
                   {"alpha_t", s.pathloss.alpha_t},
                   {"alpha_r", s.pathloss.alpha_r},
                   {"c0", s.pathloss.c0}};
  j["fading"] = {{"k_s", s.fading.k_s},
                 {"omega_s", s.fading.omega_s},
                 {"k_d", s.fading.k_d},
                 {"omega_d", s.fading.omega_d}};
  j["budget"] = {
      {"w_k", s.budget.w_k}, {"sigma0_sq", s.budget.sigma0_sq}, {"gamma_k", s.budget.gamma_k}};
  const auto& r = s.run;
  json groups = json::array();
  for (Side g : r.groups) groups.push_back(std::string(1, side_letter(g)));
  j["run"] = {
      {"seed", r.seed},
      {"trials", r.trials},
      {"max_trials", r.max_trials},
      {"min_events", r.min_events},
      {"gamma_t_sweep_db",
       {{"start", r.gamma_t_start_db}, {"stop", r.gamma_t_stop_db}, {"step", r.gamma_t_step_db}}},
      {"include_leaning", r.include_leaning},
      {"beta_in_pdf", r.beta_in_pdf},
      {"oracle", r.oracle},
      {"oracle_resolution", r.oracle_resolution},
      {"tail_fraction", r.tail_fraction},
      {"groups", groups},
      {"fit_source", r.fit_source},
      {"grid",
       {{"extent_wavelengths", r.grid_extent_wavelengths},
        {"near_wavelengths", r.grid_near_wavelengths},
        {"resolution", r.grid_resolution},
        {"peak_min_radius_wavelengths", r.peak_min_radius_wavelengths}}},
      {"profile",
       {{"angle_deg", r.profile_angle_deg},
        {"d_min_wavelengths", r.profile_d_min_wavelengths},
        {"d_max_wavelengths", r.profile_d_max_wavelengths},
        {"points", r.profile_points},
        {"spacing", r.profile_log_spacing ? "log" : "linear"}}}};
  return j;
}

json scenario_derived_json(const Scenario& s) {
  const double lambda = s.aperture.wavelength_m;
  const Aperture ap = s.make_aperture();
  return {{"element_count", s.element_count()},
          {"spacing_m", s.spacing_m()},
          {"element_area_m2", ap.element_area()},
          {"largest_dimension_m", ap.largest_dimension()},
          {"field_boundary_m", field_boundary(ap)},
          {"grid_extent_m", s.run.grid_extent_wavelengths * lambda},
          {"grid_near_m", s.run.grid_near_wavelengths * lambda},
          {"peak_min_radius_m", s.run.peak_min_radius_wavelengths * lambda},
          {"profile_d_min_m", s.run.profile_d_min_wavelengths * lambda},
          {"profile_d_max_m", s.run.profile_d_max_wavelengths * lambda}};
}

}  // namespace detail

std::string scenario_to_json(const Scenario& scenario, int indent) {
  return detail::scenario_json(scenario).dump(indent);
}

std::string scenario_hash(const Scenario& scenario) {
  const std::string text = detail::scenario_json(scenario).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace starris
