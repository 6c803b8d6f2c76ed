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

#include <span>
#include <vector>

#include "starris/channel.hpp"
#include "starris/geometry.hpp"
#include "starris/surface.hpp"

namespace starris {

// Beam targets for both sides. Angles are measured from the normal of the
// side they refer to (+z for transmission, -z for reflection) inside the
// plane at `azimuth` from the x axis; a negative angle steers towards the
// opposite half of that plane.
struct SteeringSpec {
  double angle_t = 0.0;
  double angle_r = 0.0;
  double azimuth = 0.0;
  Vec3 tx_position{0.0, 0.0, -1.0};
  Incidence incidence = Incidence::Spherical;

  double angle(Side s) const { return s == Side::Transmit ? angle_t : angle_r; }
};

// Unit vector from the surface centre towards `angle` on side `side`.
Vec3 steering_direction(double angle, double azimuth, Side side);

// Per-element phases (wrapped to [0, 2 pi)) that make every term of the
// near-field sum arrive in phase in the far-field target direction:
//   phi_m = -(2 pi / lambda) * (incident path phase_m - e_m . u_target)
// The incident path phase follows `spec.incidence`, matching incident_field().
std::vector<double> cophase_phases(const Aperture& aperture, const SteeringSpec& spec, Side side);

struct BeamPeak {
  double angle = 0.0;  // radians, signed, from the side's normal
  double gain = 0.0;   // largest |g| found in the winning angular bin
};

struct BeamPeakOptions {
  double bin_width = deg2rad(0.5);
  // Rank bins by |g| * r / min_radius rather than |g|, so that cells at
  // slightly different radii do not bias the comparison through spherical
  // spreading.
  bool compensate_spreading = true;
};

// Bins every cell at radius >= min_radius by its angle from the side's normal
// and returns the centre of the best bin. Ties resolve towards the bin with
// the smaller |angle|, then the negative one.
BeamPeak beam_peak(std::span<const double> grid, const CoveragePlane& plane, Side side,
                   double min_radius, const BeamPeakOptions& options = {});

}  // namespace starris
