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

#include "starris/beamform.hpp"

#include <cmath>
#include <limits>

#include "starris/error.hpp"

namespace starris {

Vec3 steering_direction(double angle, double azimuth, Side side) {
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  return {s * std::cos(azimuth), s * std::sin(azimuth), side == Side::Transmit ? c : -c};
}

std::vector<double> cophase_phases(const Aperture& aperture, const SteeringSpec& spec, Side side) {
  const double k = kTwoPi / aperture.wavelength();
  const Vec3 u = steering_direction(spec.angle(side), spec.azimuth, side);
  const auto incident = incident_field(aperture, spec.tx_position, spec.incidence);
  const auto positions = aperture.positions();
  std::vector<double> phases(aperture.size());
  for (std::size_t m = 0; m < phases.size(); ++m) {
    phases[m] = wrap_phase(-(std::arg(incident[m]) - k * positions[m].dot(u)));
  }
  return phases;
}

BeamPeak beam_peak(std::span<const double> grid, const CoveragePlane& plane, Side side,
                   double min_radius, const BeamPeakOptions& options) {
  if (grid.size() != plane.cells()) {
    throw Error(ErrorCode::LengthMismatch, "grid size does not match the coverage plane");
  }
  if (!(options.bin_width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  }
  const auto bins = static_cast<std::size_t>(std::ceil(kPi / options.bin_width));
  std::vector<double> score(bins, -1.0);
  std::vector<double> peak(bins, 0.0);
  const double ref = min_radius > 0.0 ? min_radius : 1.0;

  bool any = false;
  for (std::size_t i = 0; i < plane.nz; ++i) {
    const double z = plane.z_at(i);
    const double depth = side == Side::Transmit ? z : -z;
    if (!(depth > 0.0)) continue;
    for (std::size_t j = 0; j < plane.nx; ++j) {
      const double x = plane.x_at(j);
      const double r = std::hypot(x, z);
      if (r < min_radius) continue;
      const double theta = std::atan2(x, depth);
      auto b = static_cast<std::size_t>((theta + 0.5 * kPi) / options.bin_width);
      if (b >= bins) b = bins - 1;
      const double g = grid[i * plane.nx + j];
      const double s = options.compensate_spreading ? g * r / ref : g;
      any = true;
      if (s > score[b]) {
        score[b] = s;
        peak[b] = g;
      }
    }
  }
  if (!any) throw Error(ErrorCode::EmptyRegion, "no grid cell lies beyond the minimum radius");

  auto centre = [&](std::size_t b) {
    return -0.5 * kPi + (static_cast<double>(b) + 0.5) * options.bin_width;
  };
  std::size_t best = bins;
  for (std::size_t b = 0; b < bins; ++b) {
    if (score[b] < 0.0) continue;
    if (best == bins || score[b] > score[best]) {
      best = b;
      continue;
    }
    if (score[b] == score[best]) {
      const double a = std::abs(centre(b));
      const double a_best = std::abs(centre(best));
      if (a < a_best || (a == a_best && centre(b) < centre(best))) best = b;
    }
  }
  return {centre(best), peak[best]};
}

}  // namespace starris
