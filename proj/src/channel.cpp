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

#include "starris/channel.hpp"

#include <string>

#include "starris/error.hpp"

namespace starris {

void RiceanParams::validate() const {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, "Ricean K must be finite and >= 0");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorCode::InvalidArgument, "Ricean Omega must be finite and > 0");
  }
}

cplx sample_ricean(const RiceanParams& params, RngStream& rng) {
  const double los = std::sqrt(params.k * params.omega / (params.k + 1.0));
  const double sigma = std::sqrt(params.omega / (2.0 * (params.k + 1.0)));
  const double re = rng.normal();
  const double im = rng.normal();
  return {los + sigma * re, sigma * im};
}

namespace {

double log_bessel_i0(double z) {
  if (z < 500.0) return std::log(std::cyl_bessel_i(0.0, z));
  // Hankel expansion; relative error below 1e-12 for z >= 500.
  const double inv = 1.0 / (8.0 * z);
  return z - 0.5 * std::log(kTwoPi * z) + std::log1p(inv + 4.5 * inv * inv);
}

}  // namespace

double ricean_pdf(const RiceanParams& params, double x) {
  if (x <= 0.0) return 0.0;
  const double k = params.k;
  const double kp1 = k + 1.0;
  const double z = 2.0 * x * std::sqrt(k * kp1 / params.omega);
  const double log_f =
      std::log(2.0 * kp1 * x / params.omega) - k - kp1 * x * x / params.omega + log_bessel_i0(z);
  return std::exp(log_f);
}

LinkGeometry::LinkGeometry(Vec3 tx, Vec3 rx) : tx_(tx), rx_(rx) {
  if (!(tx_.norm() > 0.0) || !(rx_.norm() > 0.0)) {
    throw Error(ErrorCode::NonPositiveDistance, "link distances must be positive");
  }
  if (!(tx_.z < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "transmitter must lie on the z < 0 side");
  }
}

void PathLossModel::validate() const {
  if (alpha_0 < 0.0 || alpha_t < 0.0 || alpha_r < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "path-loss exponents must be >= 0");
  }
  if (!(c0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "path-loss constant must be > 0");
}

cplx cascaded_channel(std::span<const cplx> r, std::span<const cplx> phi, std::span<const cplx> h) {
  if (r.size() != phi.size() || h.size() != phi.size()) {
    throw Error(ErrorCode::LengthMismatch, "cascaded channel operands differ in length");
  }
  cplx g{0.0, 0.0};
  for (std::size_t m = 0; m < phi.size(); ++m) g += std::conj(r[m]) * phi[m] * h[m];
  return g;
}

FarFieldGain far_field_gain(const LinkGeometry& geometry, const PathLossModel& path_loss,
                            std::span<const cplx> r_small, std::span<const cplx> h_small,
                            const SurfaceConfig& config, Side side) {
  path_loss.validate();
  const double d = geometry.rx_distance();
  const double d0 = geometry.tx_distance();
  const auto phi = transfer_diagonal(config, side);
  const double small = std::abs(cascaded_channel(r_small, phi, h_small));
  FarFieldGain out;
  out.gain =
      path_loss.c0 * std::pow(d, -path_loss.alpha(side)) * std::pow(d0, -path_loss.alpha_0) * small;
  out.inside_near_field = d < field_boundary(config.aperture());
  return out;
}

std::vector<cplx> incident_field(const Aperture& aperture, const Vec3& tx, Incidence incidence) {
  const double k = kTwoPi / aperture.wavelength();
  const double d0 = tx.norm();
  if (!(d0 > 0.0)) throw Error(ErrorCode::NonPositiveDistance, "transmitter at the surface centre");
  const Vec3 u = tx * (1.0 / d0);
  std::vector<cplx> h;
  h.reserve(aperture.size());
  for (const auto& e : aperture.positions()) {
    if (incidence == Incidence::Spherical) {
      const double d = distance(tx, e);
      if (!(d > 0.0)) throw Error(ErrorCode::NonPositiveDistance, "transmitter on an element");
      h.push_back(std::polar(1.0 / d, k * d));
    } else {
      h.push_back(std::polar(1.0 / d0, k * (d0 - u.dot(e))));
    }
  }
  return h;
}

namespace {

double resolve_min_distance(const SurfaceConfig& config, const NearFieldOptions& options) {
  return options.min_distance > 0.0 ? options.min_distance : config.aperture().spacing() / 10.0;
}

cplx near_field_sum(const SurfaceConfig& config, std::span<const cplx> phi,
                    std::span<const cplx> incident, const Vec3& rx, Side side, bool leaning,
                    double min_distance) {
  const auto& ap = config.aperture();
  const double k = kTwoPi / ap.wavelength();
  const Vec3 normal = side_normal(side);
  const auto positions = ap.positions();
  cplx sum{0.0, 0.0};
  for (std::size_t m = 0; m < positions.size(); ++m) {
    const Vec3 v = rx - positions[m];
    const double d = v.norm();
    if (d < min_distance) {
      throw Error(ErrorCode::TooCloseToSurface, "receiver within " + std::to_string(min_distance) +
                                                    " m of element " + std::to_string(m));
    }
    if (phi[m] == cplx{0.0, 0.0}) continue;
    const double f = leaning ? 0.5 * (1.0 + normal.dot(v) / d) : 1.0;
    sum += phi[m] * incident[m] * (f / d) * std::polar(1.0, k * d);
  }
  return sum * (ap.element_area() / cplx{0.0, ap.wavelength()});
}

}  // namespace

cplx near_field_channel(const SurfaceConfig& config, std::span<const cplx> incident, const Vec3& rx,
                        Side side, const NearFieldOptions& options) {
  if (incident.size() != config.size()) {
    throw Error(ErrorCode::LengthMismatch, "incident field length differs from element count");
  }
  const auto phi = transfer_diagonal(config, side);
  return near_field_sum(config, phi, incident, rx, side, options.include_leaning,
                        resolve_min_distance(config, options));
}

double CoveragePlane::x_at(std::size_t j) const {
  return nx > 1 ? x_min + (x_max - x_min) * static_cast<double>(j) / static_cast<double>(nx - 1)
                : x_min;
}

double CoveragePlane::z_at(std::size_t i) const {
  return nz > 1 ? z_min + (z_max - z_min) * static_cast<double>(i) / static_cast<double>(nz - 1)
                : z_min;
}

std::vector<double> coverage_map(const SurfaceConfig& config, std::span<const cplx> incident,
                                 const CoveragePlane& plane, Side side,
                                 const NearFieldOptions& options, int workers) {
  if (incident.size() != config.size()) {
    throw Error(ErrorCode::LengthMismatch, "incident field length differs from element count");
  }
  if (plane.nx == 0 || plane.nz == 0) {
    throw Error(ErrorCode::InvalidArgument, "coverage plane needs at least one cell");
  }
  const auto phi = transfer_diagonal(config, side);
  const double min_d = resolve_min_distance(config, options);
  std::vector<double> grid(plane.cells(), 0.0);

  // Exceptions cannot cross the OpenMP region; the lowest failing row wins.
  const auto rows = static_cast<long long>(plane.nz);
  long long failed_row = rows;
  Error first_error(ErrorCode::TooCloseToSurface, "");
#pragma omp parallel for schedule(static) num_threads(workers > 0 ? workers : 1)
  for (long long i = 0; i < rows; ++i) {
    const auto row = static_cast<std::size_t>(i);
    try {
      for (std::size_t j = 0; j < plane.nx; ++j) {
        const Vec3 rx{plane.x_at(j), 0.0, plane.z_at(row)};
        grid[row * plane.nx + j] = std::abs(
            near_field_sum(config, phi, incident, rx, side, options.include_leaning, min_d));
      }
    } catch (const Error& e) {
#pragma omp critical(starris_coverage_error)
      {
        if (i < failed_row) {
          failed_row = i;
          first_error = e;
        }
      }
    }
  }
  if (failed_row < rows) throw first_error;
  return grid;
}

double field_boundary(const Aperture& aperture) {
  const double la = aperture.largest_dimension();
  return 2.0 * la * la / aperture.wavelength();
}

}  // namespace starris
