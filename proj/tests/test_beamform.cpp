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

#include <random>

#include "doctest.h"
#include "starris/beamform.hpp"
#include "starris/error.hpp"

using namespace starris;

namespace {

constexpr double kLambda = 0.01;

double far_gain(const Aperture& a, const std::vector<double>& tp, double angle_deg) {
  const std::vector<double> rp(a.size(), 0.0);
  const auto s = uniform_star_surface(a, 0.5, 0.5, tp, rp);
  const auto h = incident_field(a, {0.0, 0.0, -1.0});
  const double r = 1e4;
  const double t = deg2rad(angle_deg);
  return std::abs(
      near_field_channel(s, h, {r * std::sin(t), 0.0, r * std::cos(t)}, Side::Transmit));
}

}  // namespace

TEST_CASE("steering direction") {
  const Vec3 t = steering_direction(deg2rad(30.0), 0.0, Side::Transmit);
  CHECK(t.x == doctest::Approx(0.5));
  CHECK(t.z == doctest::Approx(std::sqrt(3.0) / 2));
  const Vec3 r = steering_direction(deg2rad(-30.0), kPi / 2, Side::Reflect);
  CHECK(r.y == doctest::Approx(-0.5));
  CHECK(r.z == doctest::Approx(-std::sqrt(3.0) / 2));
}

TEST_CASE("cophasing beats random phase profiles in the steered direction") {
  const Aperture a(4, 4, kLambda / 2, kLambda);
  SteeringSpec spec;
  spec.angle_t = deg2rad(25.0);
  const auto best = cophase_phases(a, spec, Side::Transmit);
  const double g_best = far_gain(a, best, 25.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(a.size());
    for (auto& x : p) x = u(rng);
    CHECK(far_gain(a, p, 25.0) <= g_best * (1.0 + 1e-9));
  }
}

TEST_CASE("a common phase offset does not change the gain") {
  const Aperture a(3, 3, kLambda / 2, kLambda);
  SteeringSpec spec;
  spec.angle_t = deg2rad(-15.0);
  auto p = cophase_phases(a, spec, Side::Transmit);
  const double g = far_gain(a, p, -15.0);
  for (auto& x : p) x += 1.234;
  CHECK(far_gain(a, p, -15.0) == doctest::Approx(g).epsilon(1e-9));
}

TEST_CASE("beam peak follows the steering angle") {
  const Aperture a(8, 8, kLambda / 2, kLambda);
  const auto h = incident_field(a, {0.0, 0.0, -1.0});
  const double b = field_boundary(a);
  const CoveragePlane plane{-6 * b, 6 * b, 0.01, 6 * b, 241, 121};
  double prev = -INFINITY;
  for (double deg : {-30.0, 0.0, 15.0, 35.0}) {
    SteeringSpec spec;
    spec.angle_t = deg2rad(deg);
    const auto tp = cophase_phases(a, spec, Side::Transmit);
    const std::vector<double> rp(a.size(), 0.0);
    const auto s = uniform_star_surface(a, 0.5, 0.5, tp, rp);
    const auto grid = coverage_map(s, h, plane, Side::Transmit);
    const auto peak = beam_peak(grid, plane, Side::Transmit, b);
    CHECK(std::abs(rad2deg(peak.angle) - deg) < 2.0);
    CHECK(peak.angle > prev);
    prev = peak.angle;
  }
}

TEST_CASE("beam peak edge cases") {
  const CoveragePlane one{1.0, 1.0, 1.0, 1.0, 1, 1};
  const std::vector<double> g1{0.3};
  const auto p = beam_peak(g1, one, Side::Transmit, 0.0);
  CHECK(std::abs(rad2deg(p.angle) - 45.0) <= 0.25 + 1e-9);
  CHECK(p.gain == 0.3);

  const CoveragePlane two{-1.0, 1.0, 1.0, 1.0, 2, 1};
  const std::vector<double> g2{0.5, 0.5};
  CHECK(beam_peak(g2, two, Side::Transmit, 0.0).angle < 0.0);

  CHECK_THROWS_AS(beam_peak(g1, one, Side::Transmit, 10.0), Error);
  CHECK_THROWS_AS(beam_peak(g1, one, Side::Reflect, 0.0), Error);
  CHECK_THROWS_AS(beam_peak(g2, one, Side::Transmit, 0.0), Error);
}
