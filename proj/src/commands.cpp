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

#include "starris/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include "scenario_json.hpp"
#include "starris/error.hpp"
#include "starris/rng.hpp"

namespace starris {

using nlohmann::json;

namespace {

constexpr const char* kUnitsNote = "model-native, C0=1";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const char* kind_name(SurfaceKind k) { return k == SurfaceKind::Star ? "star" : "conventional"; }

void write_file(const std::filesystem::path& path, const std::string& content,
                CommandResult& result) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
  result.files.push_back(path.string());
}

std::filesystem::path prepare_dir(const std::string& out_dir) {
  const std::filesystem::path dir(out_dir.empty() ? std::string(".") : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir.string() + "'");
  return dir;
}

json envelope(const Scenario& s, const char* command) {
  return {{"command", command},
          {"scenario", detail::scenario_json(s)},
          {"derived", detail::scenario_derived_json(s)},
          {"config_hash", scenario_hash(s)},
          {"seed", s.run.seed},
          {"units", kUnitsNote}};
}

// Runs the lint checks relevant to one command; returns true (and fills
// result) when errors block the run.
bool blocked_by_lint(const Scenario& s, std::initializer_list<std::string_view> codes,
                     CommandResult& result) {
  std::ostringstream rep;
  bool errors = false;
  for (const auto& f : lint_scenario(s)) {
    if (std::find(codes.begin(), codes.end(), f.code) == codes.end()) continue;
    rep << (f.error ? "error " : "warning ") << f.code << ": " << f.message << "\n";
    errors = errors || f.error;
  }
  result.report = rep.str();
  if (errors) result.exit_code = kExitSchema;
  return errors;
}

template <typename Fn>
CommandResult guarded(const Scenario& s, std::initializer_list<std::string_view> codes, Fn&& body) {
  CommandResult result;
  if (blocked_by_lint(s, codes, result)) return result;
  try {
    body(result);
  } catch (const Error& e) {
    result.exit_code = e.code() == ErrorCode::Schema ? kExitSchema : kExitCompute;
    result.report += std::string("error ") + error_code_name(e.code()) + ": " + e.what() + "\n";
  }
  return result;
}

}  // namespace

std::vector<LintFinding> lint_scenario(const Scenario& s) {
  std::vector<LintFinding> out;
  const std::size_t m = s.element_count();
  const double lambda = s.aperture.wavelength_m;
  const double boundary = field_boundary(s.make_aperture());

  if (s.surface.kind == SurfaceKind::Star) {
    const double sum = s.surface.beta_t + s.surface.beta_r;
    if (s.surface.lossless_override) {
      out.push_back({false, "LOSSLESS",
                     "lossless_override active: beta_t + beta_r = " + fixed(sum, 6) +
                         " is not checked against passivity"});
    } else if (sum > 1.0 + kPassivityTolerance) {
      out.push_back({true, "PASSIVITY", "beta_t + beta_r = " + fixed(sum, 6) + " exceeds 1"});
    }
    for (Side g : s.run.groups) {
      const double b = g == Side::Transmit ? s.surface.beta_t : s.surface.beta_r;
      if (b <= 0.0) {
        out.push_back({false, "UNSERVED",
                       std::string("group ") + side_letter(g) +
                           " has zero power fraction; outage cannot be evaluated for it"});
      }
    }
  } else if (s.surface.m_t + s.surface.m_r != m) {
    out.push_back({true, "PARTITION",
                   "m_t + m_r = " + std::to_string(s.surface.m_t + s.surface.m_r) +
                       " but the aperture has " + std::to_string(m) + " elements"});
  }

  const double d_min = s.run.profile_d_min_wavelengths * lambda;
  if (d_min < boundary) {
    out.push_back({false, "NEARFIELD",
                   "gain profile starts at " + g17(d_min) + " m, inside the field boundary " +
                       g17(boundary) + " m; the far-field column is not physical there"});
  }

  const double min_radius = s.run.peak_min_radius_wavelengths > 0.0
                                ? s.run.peak_min_radius_wavelengths * lambda
                                : boundary;
  const double extent = s.run.grid_extent_wavelengths * lambda;
  if (std::hypot(extent, extent) <= min_radius) {
    out.push_back(
        {false, "COVERAGE_RADIUS",
         "coverage grid does not reach beyond the peak search radius " + g17(min_radius) + " m"});
  }

  const auto sweep = s.gamma_t_sweep_db();
  const double gamma_top = std::pow(10.0, sweep.back() / 10.0);
  for (Side g : s.run.groups) {
    double expected = 0.0;
    try {
      expected = asymptotic_outage(s.outage_scenario(g), gamma_top) *
                 static_cast<double>(s.run.max_trials);
    } catch (const Error&) {
      continue;  // already reported as PASSIVITY, PARTITION or UNSERVED
    }
    if (expected < static_cast<double>(s.run.min_events)) {
      out.push_back({false, "MC_BUDGET",
                     std::string("group ") + side_letter(g) + ": about " + fixed(expected, 2) +
                         " outage events expected at " + fixed(sweep.back(), 1) +
                         " dB with max_trials; Monte Carlo columns stay empty there"});
    }
  }
  return out;
}

CommandResult cmd_validate(const Scenario& s) {
  CommandResult result;
  std::ostringstream rep;
  bool errors = false;
  bool warnings = false;
  for (const auto& f : lint_scenario(s)) {
    rep << (f.error ? "error " : "warning ") << f.code << ": " << f.message << "\n";
    errors = errors || f.error;
    warnings = warnings || !f.error;
  }
  if (!errors && !warnings) rep << "ok\n";
  result.report = rep.str();
  result.exit_code = errors ? kExitSchema : (warnings ? kExitWarnings : kExitOk);
  return result;
}

CommandResult cmd_boundary(const Scenario& s) {
  CommandResult result;
  const Aperture ap = s.make_aperture();
  const double b = field_boundary(ap);
  result.report = "field boundary: " + g17(b) + " m (" + g17(b / ap.wavelength()) +
                  " wavelengths), L_a = " + g17(ap.largest_dimension()) + " m\n";
  return result;
}

CoverageResult compute_coverage(const Scenario& s, int workers) {
  const SurfaceConfig config = s.make_surface();
  const Aperture& ap = config.aperture();
  const double lambda = ap.wavelength();
  const auto incident = incident_field(ap, s.steering.tx_position_m, s.steering.incidence);

  CoverageResult out;
  out.field_boundary = field_boundary(ap);
  out.min_radius = s.run.peak_min_radius_wavelengths > 0.0
                       ? s.run.peak_min_radius_wavelengths * lambda
                       : out.field_boundary;
  const double extent = s.run.grid_extent_wavelengths * lambda;
  const double near = s.run.grid_near_wavelengths * lambda;
  NearFieldOptions opts;
  opts.include_leaning = s.run.include_leaning;

  for (Side side : {Side::Transmit, Side::Reflect}) {
    CoverageSide cs;
    cs.side = side;
    cs.plane.x_min = -extent;
    cs.plane.x_max = extent;
    cs.plane.z_min = side == Side::Transmit ? near : -extent;
    cs.plane.z_max = side == Side::Transmit ? extent : -near;
    cs.plane.nx = s.run.grid_resolution;
    cs.plane.nz = s.run.grid_resolution;
    cs.grid = coverage_map(config, incident, cs.plane, side, opts, workers);
    cs.peak = beam_peak(cs.grid, cs.plane, side, out.min_radius);
    out.sides.push_back(std::move(cs));
  }
  return out;
}

CommandResult cmd_coverage(const Scenario& s, const std::string& out_dir, int workers) {
  return guarded(
      s, {"PASSIVITY", "PARTITION", "LOSSLESS", "COVERAGE_RADIUS"}, [&](CommandResult& result) {
        const CoverageResult cov = compute_coverage(s, workers);
        const auto dir = prepare_dir(out_dir);
        json doc = envelope(s, "coverage");
        std::ostringstream rep;
        rep << "field boundary: " << g17(cov.field_boundary) << " m\n";
        for (const auto& cs : cov.sides) {
          std::string csv = "x_m,z_m,gain\n";
          for (std::size_t i = 0; i < cs.plane.nz; ++i) {
            for (std::size_t j = 0; j < cs.plane.nx; ++j) {
              csv += g17(cs.plane.x_at(j)) + "," + g17(cs.plane.z_at(i)) + "," +
                     g17(cs.grid[i * cs.plane.nx + j]) + "\n";
            }
          }
          const std::string name = std::string("coverage_") + side_letter(cs.side) + ".csv";
          write_file(dir / name, csv, result);
          const std::string key(1, side_letter(cs.side));
          doc["planes"][key] = {{"file", name},
                                {"x_min_m", cs.plane.x_min},
                                {"x_max_m", cs.plane.x_max},
                                {"z_min_m", cs.plane.z_min},
                                {"z_max_m", cs.plane.z_max},
                                {"nx", cs.plane.nx},
                                {"nz", cs.plane.nz}};
          doc["beam_peaks"][key] = {{"angle_deg", rad2deg(cs.peak.angle)}, {"gain", cs.peak.gain}};
          rep << "beam peak " << key << ": " << fixed(rad2deg(cs.peak.angle), 2) << " deg, gain "
              << g17(cs.peak.gain) << "\n";
        }
        doc["peak_min_radius_m"] = cov.min_radius;
        write_file(dir / "coverage.json", doc.dump(2) + "\n", result);
        result.report += rep.str();
      });
}

Vec3 profile_point(const Scenario& s, double d) {
  const double a = deg2rad(s.run.profile_angle_deg);
  const double az = deg2rad(s.steering.azimuth_deg);
  return Vec3{std::sin(a) * std::cos(az), std::sin(a) * std::sin(az), -std::cos(a)} * d;
}

GainProfile compute_gain_profile(const Scenario& s, int workers) {
  const SurfaceConfig config = s.make_surface();
  const Aperture& ap = config.aperture();
  const double lambda = ap.wavelength();
  const double k = kTwoPi / lambda;
  const Vec3 tx = s.steering.tx_position_m;
  const auto incident = incident_field(ap, tx, s.steering.incidence);
  std::vector<cplx> h_small(incident.size());
  for (std::size_t m = 0; m < incident.size(); ++m)
    h_small[m] = std::polar(1.0, std::arg(incident[m]));

  std::vector<double> ds;
  const double d_min = s.run.profile_d_min_wavelengths * lambda;
  const double d_max = s.run.profile_d_max_wavelengths * lambda;
  const std::size_t n = s.run.profile_points;
  if (s.run.profile_log_spacing) {
    std::vector<double> side;
    for (std::size_t i = 0; i < n; ++i) {
      side.push_back(d_min *
                     std::pow(d_max / d_min, static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    for (auto it = side.rbegin(); it != side.rend(); ++it) ds.push_back(-*it);
    ds.insert(ds.end(), side.begin(), side.end());
  } else {
    const std::size_t total = 2 * n;
    for (std::size_t i = 0; i < total; ++i) {
      ds.push_back(-d_max + 2.0 * d_max * static_cast<double>(i) / static_cast<double>(total - 1));
    }
  }

  std::vector<ProfileRow> rows(ds.size());
  std::vector<char> keep(ds.size(), 1);
  const auto count = static_cast<long long>(ds.size());
#pragma omp parallel for schedule(static) num_threads(workers > 0 ? workers : 1)
  for (long long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double d = ds[idx];
    const Vec3 p = profile_point(s, d);
    const Side side = p.z < 0.0 ? Side::Reflect : Side::Transmit;
    try {
      NearFieldOptions with;
      with.include_leaning = true;
      NearFieldOptions without;
      without.include_leaning = false;
      ProfileRow row;
      row.d = d;
      row.near_leaning = std::abs(near_field_channel(config, incident, p, side, with));
      row.near_plain = std::abs(near_field_channel(config, incident, p, side, without));
      const Vec3 u = p * (1.0 / p.norm());
      std::vector<cplx> r_small(ap.size());
      for (std::size_t m = 0; m < ap.size(); ++m)
        r_small[m] = std::polar(1.0, k * ap.positions()[m].dot(u));
      row.far =
          far_field_gain(LinkGeometry(tx, p), s.pathloss, r_small, h_small, config, side).gain;
      rows[idx] = row;
    } catch (const Error&) {
      keep[idx] = 0;
    }
  }

  GainProfile out;
  out.field_boundary = field_boundary(ap);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) {
      out.rows.push_back(rows[i]);
    } else {
      ++out.excluded;
    }
  }
  return out;
}

CommandResult cmd_gain_profile(const Scenario& s, const std::string& out_dir, int workers) {
  return guarded(
      s, {"PASSIVITY", "PARTITION", "LOSSLESS", "NEARFIELD"}, [&](CommandResult& result) {
        const GainProfile prof = compute_gain_profile(s, workers);
        const auto dir = prepare_dir(out_dir);
        std::string csv = "d_m,near_leaning,near_no_leaning,far_field\n";
        for (const auto& r : prof.rows) {
          csv += g17(r.d) + "," + g17(r.near_leaning) + "," + g17(r.near_plain) + "," + g17(r.far) +
                 "\n";
        }
        write_file(dir / "gain_profile.csv", csv, result);
        json doc = envelope(s, "gain-profile");
        doc["file"] = "gain_profile.csv";
        doc["rows"] = prof.rows.size();
        doc["excluded"] = prof.excluded;
        doc["field_boundary_m"] = prof.field_boundary;
        write_file(dir / "gain_profile.json", doc.dump(2) + "\n", result);
        result.report += "field boundary: " + g17(prof.field_boundary) + " m\n";
        result.report += "profile rows: " + std::to_string(prof.rows.size()) +
                         ", excluded by min_distance: " + std::to_string(prof.excluded) + "\n";
      });
}

std::vector<OutageTable> compute_outage(const Scenario& s, int workers) {
  std::vector<OutageTable> tables;
  const auto sweep = s.gamma_t_sweep_db();
  MonteCarloOptions mc;
  mc.trials = s.run.trials;
  mc.max_trials = s.run.max_trials;
  mc.min_events = s.run.min_events;
  mc.workers = workers;
  OracleOptions oracle;
  oracle.resolution = s.run.oracle_resolution;

  for (Side group : s.run.groups) {
    const OutageScenario o = s.outage_scenario(group);
    o.validate();
    OutageTable table;
    table.kind = o.kind;
    table.group = group;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      OutageRow row;
      row.gamma_t_db = sweep[i];
      const double gamma_t = std::pow(10.0, sweep[i] / 10.0);
      row.asymptotic = asymptotic_outage(o, gamma_t);
      if (s.run.oracle) {
        try {
          row.oracle = outage_oracle_numeric(o, gamma_t, oracle);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ResolutionTooCoarse) throw;
        }
      }
      const double predicted = row.oracle ? *row.oracle : std::min(row.asymptotic, 1.0);
      if (predicted * static_cast<double>(mc.max_trials) >= static_cast<double>(mc.min_events)) {
        const std::uint64_t seed =
            mix64(s.run.seed) ^
            mix64((static_cast<std::uint64_t>(group == Side::Reflect) << 32) + i);
        const OutageEstimate est = monte_carlo_outage(o, gamma_t, seed, mc);
        if (est.events >= mc.min_events) row.mc = est;
      }
      table.rows.push_back(row);
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

DiversityFit fit_diversity(const OutageTable& table, double tail_fraction) {
  DiversityFit fit;
  auto attempt = [&](auto value) -> std::optional<double> {
    OutageCurve curve;
    for (const auto& r : table.rows) {
      if (auto p = value(r))
        curve.points.push_back({std::pow(10.0, r.gamma_t_db / 10.0), *p, 0, 0.0});
    }
    try {
      return estimate_diversity_order(curve, tail_fraction);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InsufficientPoints || e.code() == ErrorCode::ZeroProbability) {
        return std::nullopt;
      }
      throw;
    }
  };
  fit.asymptotic =
      attempt([](const OutageRow& r) -> std::optional<double> { return r.asymptotic; });
  fit.mc = attempt([](const OutageRow& r) -> std::optional<double> {
    if (r.mc) return r.mc->probability;
    return std::nullopt;
  });
  fit.oracle = attempt([](const OutageRow& r) { return r.oracle; });
  return fit;
}

CommandResult cmd_outage(const Scenario& s, const std::string& out_dir, int workers) {
  return guarded(
      s, {"PASSIVITY", "PARTITION", "LOSSLESS", "UNSERVED", "MC_BUDGET"},
      [&](CommandResult& result) {
        const auto tables = compute_outage(s, workers);
        const auto dir = prepare_dir(out_dir);
        json doc = envelope(s, "outage");
        std::ostringstream rep;
        bool fit_failed = false;
        for (const auto& t : tables) {
          std::string csv = "gamma_t_db,p_mc,ci_halfwidth,p_asymptotic,p_oracle\n";
          for (const auto& r : t.rows) {
            csv += g17(r.gamma_t_db) + ",";
            csv += r.mc ? g17(r.mc->probability) + "," + g17(r.mc->halfwidth) : std::string(",");
            csv += "," + g17(r.asymptotic) + ",";
            if (r.oracle) csv += g17(*r.oracle);
            csv += "\n";
          }
          const std::string name =
              std::string("outage_") + kind_name(t.kind) + "_" + side_letter(t.group) + ".csv";
          write_file(dir / name, csv, result);

          const DiversityFit fit = fit_diversity(t, s.run.tail_fraction);
          auto show = [](const std::optional<double>& v) {
            return v ? fixed(*v, 6) : std::string("n/a");
          };
          const std::string key = std::string(kind_name(t.kind)) + "_" + side_letter(t.group);
          rep << "diversity " << key << ": asymptotic " << show(fit.asymptotic) << ", mc "
              << show(fit.mc) << ", oracle " << show(fit.oracle) << "\n";
          auto to_json = [](const std::optional<double>& v) {
            return v ? json(*v) : json(nullptr);
          };
          doc["curves"][key] = {{"file", name},
                                {"diversity_asymptotic", to_json(fit.asymptotic)},
                                {"diversity_mc", to_json(fit.mc)},
                                {"diversity_oracle", to_json(fit.oracle)}};
          const auto& chosen = s.run.fit_source == "mc"       ? fit.mc
                               : s.run.fit_source == "oracle" ? fit.oracle
                                                              : fit.asymptotic;
          fit_failed = fit_failed || !chosen;
        }
        write_file(dir / "outage.json", doc.dump(2) + "\n", result);
        result.report += rep.str();
        if (fit_failed) {
          result.report += "error: the " + s.run.fit_source +
                           " column has too few usable points for a diversity fit\n";
          result.exit_code = kExitFitFailed;
        }
      });
}

}  // namespace starris
