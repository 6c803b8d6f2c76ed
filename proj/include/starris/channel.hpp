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
#include <span>
#include <vector>

#include "starris/geometry.hpp"
#include "starris/rng.hpp"
#include "starris/surface.hpp"

namespace starris {

// Ricean fading R(K, Omega): line-of-sight power K*Omega/(K+1) plus a
// circularly-symmetric diffuse part of power Omega/(K+1).
struct RiceanParams {
  double k = 0.0;
  double omega = 1.0;

  void validate() const;
};

cplx sample_ricean(const RiceanParams& params, RngStream& rng);

// Exact magnitude density 2(K+1)x/Omega * exp(-K - (K+1)x^2/Omega) * I0(2x sqrt(K(K+1)/Omega)).
double ricean_pdf(const RiceanParams& params, double x);

// Transmitter and receiver positions relative to the surface centre (origin).
class LinkGeometry {
 public:
  LinkGeometry(Vec3 tx, Vec3 rx);

  const Vec3& tx() const { return tx_; }
  const Vec3& rx() const { return rx_; }
  double tx_distance() const { return tx_.norm(); }
  double rx_distance() const { return rx_.norm(); }
  // Receivers with z < 0 share the transmitter's side and see reflection.
  Side side() const { return rx_.z < 0.0 ? Side::Reflect : Side::Transmit; }

 private:
  Vec3 tx_;
  Vec3 rx_;
};

struct PathLossModel {
  double alpha_0 = 2.0;
  double alpha_t = 2.0;
  double alpha_r = 2.0;
  double c0 = 1.0;

  double alpha(Side s) const { return s == Side::Transmit ? alpha_t : alpha_r; }
  void validate() const;
};

// g = sum_m conj(r_m) * phi_m * h_m
cplx cascaded_channel(std::span<const cplx> r, std::span<const cplx> phi, std::span<const cplx> h);

struct FarFieldGain {
  double gain = 0.0;
  // Set when the receiver sits inside 2 L_a^2 / lambda, where the ray model
  // is not physically meaningful.
  bool inside_near_field = false;
};

// |g| = c0 * d^-alpha_chi * d0^-alpha_0 * |r~^H Phi h~|, with the side taken
// from `side` and Phi from `config`.
FarFieldGain far_field_gain(const LinkGeometry& geometry, const PathLossModel& path_loss,
                            std::span<const cplx> r_small, std::span<const cplx> h_small,
                            const SurfaceConfig& config, Side side);

// Obliquity weighting (1 + cos theta) / 2.
inline double leaning_factor(double theta) { return 0.5 * (1.0 + std::cos(theta)); }

// Outward normal of the half-space a side radiates into.
inline Vec3 side_normal(Side s) { return s == Side::Transmit ? Vec3{0, 0, 1} : Vec3{0, 0, -1}; }

// Incident field per element for a line-of-sight transmitter.
enum class Incidence { Spherical, Plane };

// Spherical: h_m = exp(j 2 pi |tx - e_m| / lambda) / |tx - e_m|.
// Plane: unit-amplitude wave travelling from `tx` towards the origin,
// h_m = exp(j 2 pi (|tx| - u . e_m) / lambda) / |tx|, u the unit vector from
// the origin to tx.
std::vector<cplx> incident_field(const Aperture& aperture, const Vec3& tx,
                                 Incidence incidence = Incidence::Spherical);

struct NearFieldOptions {
  bool include_leaning = true;
  // Receivers closer than this to any element centre are rejected. Zero
  // selects spacing / 10.
  double min_distance = 0.0;
};

// g = A_e / (j lambda) * sum_m Phi_m h_m F(theta_m) exp(j 2 pi d_m / lambda) / d_m
cplx near_field_channel(const SurfaceConfig& config, std::span<const cplx> incident, const Vec3& rx,
                        Side side, const NearFieldOptions& options = {});

// Observation window in the x-z plane (y = 0). Cell (i, j) sits at
// x = x_min + j * dx, z = z_min + i * dz; the grid is stored row-major with
// z as the slow index.
struct CoveragePlane {
  double x_min = 0.0;
  double x_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  std::size_t nx = 1;
  std::size_t nz = 1;

  double x_at(std::size_t j) const;
  double z_at(std::size_t i) const;
  std::size_t cells() const { return nx * nz; }
};

// Row-major |g| over `plane`. Rows are evaluated in parallel on up to
// `workers` threads; values do not depend on the worker count.
std::vector<double> coverage_map(const SurfaceConfig& config, std::span<const cplx> incident,
                                 const CoveragePlane& plane, Side side,
                                 const NearFieldOptions& options = {}, int workers = 1);

// Near-field / far-field boundary 2 L_a^2 / lambda.
double field_boundary(const Aperture& aperture);

}  // namespace starris
