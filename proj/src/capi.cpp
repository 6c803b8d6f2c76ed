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

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "starris/analysis.hpp"
#include "starris/beamform.hpp"
#include "starris/channel.hpp"
#include "starris/commands.hpp"
#include "starris/error.hpp"
#include "starris/scenario.hpp"
#include "starris/starris.h"
#include "starris/surface.hpp"

struct starris_surface {
  starris::SurfaceConfig config;
};

struct starris_scenario {
  starris::Scenario scenario;
};

struct starris_result {
  starris::CommandResult result;
};

namespace {

using namespace starris;

thread_local std::string g_last_error;

starris_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return STARRIS_E_INVALID_ARGUMENT;
    case ErrorCode::PassivityViolation: return STARRIS_E_PASSIVITY;
    case ErrorCode::DegenerateImpedance: return STARRIS_E_DEGENERATE_IMPEDANCE;
    case ErrorCode::LengthMismatch: return STARRIS_E_LENGTH_MISMATCH;
    case ErrorCode::PartitionMismatch: return STARRIS_E_PARTITION_MISMATCH;
    case ErrorCode::NonPositiveDistance: return STARRIS_E_NON_POSITIVE_DISTANCE;
    case ErrorCode::TooCloseToSurface: return STARRIS_E_TOO_CLOSE;
    case ErrorCode::EmptyRegion: return STARRIS_E_EMPTY_REGION;
    case ErrorCode::InsufficientPoints: return STARRIS_E_INSUFFICIENT_POINTS;
    case ErrorCode::ZeroProbability: return STARRIS_E_ZERO_PROBABILITY;
    case ErrorCode::ResolutionTooCoarse: return STARRIS_E_RESOLUTION;
    case ErrorCode::Schema: return STARRIS_E_SCHEMA;
    case ErrorCode::Io: return STARRIS_E_IO;
  }
  return STARRIS_E_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
starris_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return STARRIS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return STARRIS_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STARRIS_E_INTERNAL;
  }
}

void require_ptr(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

Side to_side(starris_side s) {
  if (s == STARRIS_SIDE_T) return Side::Transmit;
  if (s == STARRIS_SIDE_R) return Side::Reflect;
  throw Error(ErrorCode::InvalidArgument, "unknown side");
}

cplx from_c(starris_complex c) { return {c.re, c.im}; }
starris_complex to_c(cplx c) { return {c.real(), c.imag()}; }

std::vector<double> phases_or_zero(const double* p, std::size_t n) {
  return p ? std::vector<double>(p, p + n) : std::vector<double>(n, 0.0);
}

OutageScenario to_scenario(const starris_outage_params* p) {
  require_ptr(p, "params");
  OutageScenario s;
  if (p->kind != STARRIS_KIND_STAR && p->kind != STARRIS_KIND_CONVENTIONAL) {
    throw Error(ErrorCode::InvalidArgument, "unknown surface kind");
  }
  s.kind = p->kind == STARRIS_KIND_STAR ? SurfaceKind::Star : SurfaceKind::Conventional;
  s.m = p->m;
  s.beta_t = p->beta_t;
  s.beta_r = p->beta_r;
  s.m_t = p->m_t;
  s.m_r = p->m_r;
  s.group = to_side(p->group);
  s.surface = {p->k_s, p->omega_s};
  s.direct = {p->k_d, p->omega_d};
  s.budget = {p->w_k, p->sigma0_sq, p->gamma_k};
  s.lossless_override = p->lossless_override != 0;
  s.beta_in_pdf = p->beta_in_pdf != 0;
  return s;
}

SteeringSpec to_steering(const starris_steering* s) {
  require_ptr(s, "steering");
  SteeringSpec spec;
  spec.angle_t = s->angle_t_rad;
  spec.angle_r = s->angle_r_rad;
  spec.azimuth = s->azimuth_rad;
  spec.tx_position = {s->tx_position_m[0], s->tx_position_m[1], s->tx_position_m[2]};
  spec.incidence = s->plane_wave ? Incidence::Plane : Incidence::Spherical;
  return spec;
}

const std::vector<std::string>& presets() {
  static const std::vector<std::string> names = preset_names();
  return names;
}

}  // namespace

extern "C" {

const char* starris_version(void) { return "0.1.0"; }

const char* starris_status_string(starris_status status) {
  switch (status) {
    case STARRIS_OK: return "ok";
    case STARRIS_E_INVALID_ARGUMENT: return "invalid argument";
    case STARRIS_E_PASSIVITY: return "passivity violation";
    case STARRIS_E_DEGENERATE_IMPEDANCE: return "degenerate impedance";
    case STARRIS_E_LENGTH_MISMATCH: return "length mismatch";
    case STARRIS_E_PARTITION_MISMATCH: return "partition mismatch";
    case STARRIS_E_NON_POSITIVE_DISTANCE: return "non-positive distance";
    case STARRIS_E_TOO_CLOSE: return "too close to surface";
    case STARRIS_E_EMPTY_REGION: return "empty region";
    case STARRIS_E_INSUFFICIENT_POINTS: return "insufficient points";
    case STARRIS_E_ZERO_PROBABILITY: return "zero probability";
    case STARRIS_E_RESOLUTION: return "resolution too coarse";
    case STARRIS_E_SCHEMA: return "schema error";
    case STARRIS_E_IO: return "i/o error";
    case STARRIS_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* starris_last_error(void) { return g_last_error.c_str(); }

starris_status starris_coefficients_from_impedance(starris_complex admittance,
                                                   starris_complex impedance, double eta0,
                                                   starris_complex* t, starris_complex* r) {
  return guard([&] {
    require_ptr(t, "t");
    require_ptr(r, "r");
    const auto c = coefficients_from_impedance({from_c(admittance), from_c(impedance), eta0});
    *t = to_c(c.transmission);
    *r = to_c(c.reflection);
  });
}

starris_status starris_check_element(double beta_t, double phase_t, double beta_r, double phase_r,
                                     int lossless_override) {
  return guard(
      [&] { (void)make_element(beta_t, phase_t, beta_r, phase_r, lossless_override != 0); });
}

starris_status starris_surface_create_star(size_t rows, size_t cols, double spacing_m,
                                           double wavelength_m, double beta_t, double beta_r,
                                           const double* t_phases, const double* r_phases,
                                           int lossless_override, starris_surface** out) {
  return guard([&] {
    require_ptr(out, "out");
    const Aperture ap(rows, cols, spacing_m, wavelength_m);
    auto cfg = uniform_star_surface(ap, beta_t, beta_r, phases_or_zero(t_phases, ap.size()),
                                    phases_or_zero(r_phases, ap.size()), lossless_override != 0);
    *out = new starris_surface{std::move(cfg)};
  });
}

starris_status starris_surface_create_conventional(size_t rows, size_t cols, double spacing_m,
                                                   double wavelength_m, size_t m_t, size_t m_r,
                                                   const double* t_phases, const double* r_phases,
                                                   starris_surface** out) {
  return guard([&] {
    require_ptr(out, "out");
    const Aperture ap(rows, cols, spacing_m, wavelength_m);
    auto cfg = conventional_surface(ap, m_t, m_r, phases_or_zero(t_phases, ap.size()),
                                    phases_or_zero(r_phases, ap.size()));
    *out = new starris_surface{std::move(cfg)};
  });
}

void starris_surface_destroy(starris_surface* surface) { delete surface; }

size_t starris_surface_size(const starris_surface* surface) {
  return surface ? surface->config.size() : 0;
}

starris_status starris_surface_transfer(const starris_surface* surface, starris_side side,
                                        starris_complex* out, size_t len) {
  return guard([&] {
    require_ptr(surface, "surface");
    require_ptr(out, "out");
    if (len != surface->config.size()) {
      throw Error(ErrorCode::LengthMismatch, "output length differs from element count");
    }
    const auto diag = transfer_diagonal(surface->config, to_side(side));
    for (std::size_t m = 0; m < diag.size(); ++m) out[m] = to_c(diag[m]);
  });
}

starris_status starris_surface_field_boundary(const starris_surface* surface, double* out) {
  return guard([&] {
    require_ptr(surface, "surface");
    require_ptr(out, "out");
    *out = field_boundary(surface->config.aperture());
  });
}

double starris_leaning_factor(double theta) { return leaning_factor(theta); }

starris_status starris_field_boundary(size_t rows, size_t cols, double spacing_m,
                                      double wavelength_m, double* out) {
  return guard([&] {
    require_ptr(out, "out");
    *out = field_boundary(Aperture(rows, cols, spacing_m, wavelength_m));
  });
}

starris_status starris_near_field_channel(const starris_surface* surface, const double tx[3],
                                          const double rx[3], starris_side side,
                                          int include_leaning, starris_complex* out) {
  return guard([&] {
    require_ptr(surface, "surface");
    require_ptr(tx, "tx");
    require_ptr(rx, "rx");
    require_ptr(out, "out");
    const auto& cfg = surface->config;
    const auto incident = incident_field(cfg.aperture(), {tx[0], tx[1], tx[2]});
    NearFieldOptions opts;
    opts.include_leaning = include_leaning != 0;
    *out = to_c(near_field_channel(cfg, incident, {rx[0], rx[1], rx[2]}, to_side(side), opts));
  });
}

starris_status starris_cophase_phases(size_t rows, size_t cols, double spacing_m,
                                      double wavelength_m, const starris_steering* steering,
                                      starris_side side, double* out, size_t len) {
  return guard([&] {
    require_ptr(out, "out");
    const Aperture ap(rows, cols, spacing_m, wavelength_m);
    if (len != ap.size()) throw Error(ErrorCode::LengthMismatch, "output length differs from M");
    const auto phases = cophase_phases(ap, to_steering(steering), to_side(side));
    std::memcpy(out, phases.data(), phases.size() * sizeof(double));
  });
}

void starris_outage_params_default(starris_outage_params* params) {
  if (params == nullptr) return;
  const OutageScenario d;
  params->kind = STARRIS_KIND_STAR;
  params->m = d.m;
  params->beta_t = d.beta_t;
  params->beta_r = d.beta_r;
  params->m_t = d.m_t;
  params->m_r = d.m_r;
  params->group = STARRIS_SIDE_T;
  params->k_s = d.surface.k;
  params->omega_s = d.surface.omega;
  params->k_d = d.direct.k;
  params->omega_d = d.direct.omega;
  params->w_k = d.budget.w_k;
  params->sigma0_sq = d.budget.sigma0_sq;
  params->gamma_k = d.budget.gamma_k;
  params->lossless_override = 0;
  params->beta_in_pdf = 1;
}

starris_status starris_asymptotic_outage(const starris_outage_params* params, double gamma_t,
                                         double* out) {
  return guard([&] {
    require_ptr(out, "out");
    *out = asymptotic_outage(to_scenario(params), gamma_t);
  });
}

starris_status starris_oracle_outage(const starris_outage_params* params, double gamma_t,
                                     size_t resolution, double* out) {
  return guard([&] {
    require_ptr(out, "out");
    OracleOptions opts;
    if (resolution != 0) opts.resolution = resolution;
    *out = outage_oracle_numeric(to_scenario(params), gamma_t, opts);
  });
}

starris_status starris_monte_carlo_outage(const starris_outage_params* params, double gamma_t,
                                          uint64_t trials, uint64_t max_trials, uint64_t seed,
                                          int workers, double* probability, double* halfwidth,
                                          uint64_t* trials_used) {
  return guard([&] {
    require_ptr(probability, "probability");
    MonteCarloOptions opts;
    opts.trials = trials;
    opts.max_trials = max_trials;
    opts.workers = workers;
    const auto est = monte_carlo_outage(to_scenario(params), gamma_t, seed, opts);
    *probability = est.probability;
    if (halfwidth) *halfwidth = est.halfwidth;
    if (trials_used) *trials_used = est.trials;
  });
}

starris_status starris_diversity_order(const double* gamma_t, const double* probability, size_t n,
                                       double tail_fraction, double* out) {
  return guard([&] {
    require_ptr(gamma_t, "gamma_t");
    require_ptr(probability, "probability");
    require_ptr(out, "out");
    OutageCurve curve;
    for (std::size_t i = 0; i < n; ++i)
      curve.points.push_back({gamma_t[i], probability[i], 0, 0.0});
    *out = estimate_diversity_order(curve, tail_fraction);
  });
}

starris_status starris_scenario_load_file(const char* path, starris_scenario** out) {
  return guard([&] {
    require_ptr(path, "path");
    require_ptr(out, "out");
    *out = new starris_scenario{load_scenario_file(path)};
  });
}

starris_status starris_scenario_load_preset(const char* name, starris_scenario** out) {
  return guard([&] {
    require_ptr(name, "name");
    require_ptr(out, "out");
    *out = new starris_scenario{load_preset(name)};
  });
}

starris_status starris_scenario_parse(const char* json, starris_scenario** out) {
  return guard([&] {
    require_ptr(json, "json");
    require_ptr(out, "out");
    *out = new starris_scenario{parse_scenario(json)};
  });
}

void starris_scenario_destroy(starris_scenario* scenario) { delete scenario; }

starris_status starris_scenario_set_seed(starris_scenario* scenario, uint64_t seed) {
  return guard([&] {
    require_ptr(scenario, "scenario");
    scenario->scenario.run.seed = seed;
  });
}

starris_status starris_scenario_to_json(const starris_scenario* scenario, char** out) {
  return guard([&] {
    require_ptr(scenario, "scenario");
    require_ptr(out, "out");
    const std::string text = scenario_to_json(scenario->scenario);
    auto* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void starris_string_free(char* text) { delete[] text; }

size_t starris_preset_count(void) { return presets().size(); }

const char* starris_preset_name(size_t index) {
  return index < presets().size() ? presets()[index].c_str() : nullptr;
}

starris_status starris_run(const starris_scenario* scenario, starris_command command,
                           const char* out_dir, int workers, starris_result** out) {
  return guard([&] {
    require_ptr(scenario, "scenario");
    require_ptr(out, "out");
    if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
    const auto& s = scenario->scenario;
    const std::string dir = out_dir ? out_dir : ".";
    auto res = std::make_unique<starris_result>();
    switch (command) {
      case STARRIS_CMD_VALIDATE: res->result = cmd_validate(s); break;
      case STARRIS_CMD_BOUNDARY: res->result = cmd_boundary(s); break;
      case STARRIS_CMD_COVERAGE: res->result = cmd_coverage(s, dir, workers); break;
      case STARRIS_CMD_GAIN_PROFILE: res->result = cmd_gain_profile(s, dir, workers); break;
      case STARRIS_CMD_OUTAGE: res->result = cmd_outage(s, dir, workers); break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown command");
    }
    *out = res.release();
  });
}

int starris_result_exit_code(const starris_result* result) {
  return result ? result->result.exit_code : kExitCompute;
}

const char* starris_result_report(const starris_result* result) {
  return result ? result->result.report.c_str() : "";
}

size_t starris_result_file_count(const starris_result* result) {
  return result ? result->result.files.size() : 0;
}

const char* starris_result_file(const starris_result* result, size_t index) {
  if (result == nullptr || index >= result->result.files.size()) return nullptr;
  return result->result.files[index].c_str();
}

void starris_result_destroy(starris_result* result) { delete result; }

}  // extern "C"
