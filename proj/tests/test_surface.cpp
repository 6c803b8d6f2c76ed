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

#include <boost/multiprecision/cpp_complex.hpp>
#include <random>

#include "doctest.h"
#include "starris/error.hpp"
#include "starris/surface.hpp"

using namespace starris;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("make_element accepts passive splits") {
  const auto e = make_element(0.4, 0.0, 0.6, 0.0);
  CHECK(std::norm(e.transmission()) == doctest::Approx(0.4));
  CHECK(std::norm(e.reflection()) == doctest::Approx(0.6));

  const auto r = make_element(0.0, 0.0, 1.0, kPi);
  CHECK(std::abs(r.transmission()) == 0.0);
  CHECK(std::abs(r.reflection() - cplx(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("make_element rejects active and malformed splits") {
  CHECK(code_of([] { make_element(0.7, 0.0, 0.7, 0.0); }) == ErrorCode::PassivityViolation);
  CHECK(code_of([] { make_element(-0.1, 0.0, 0.5, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_element(0.5, 0.0, 1.5, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_element(0.5, NAN, 0.5, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(make_element(1.0, 0.0, 1.0, 0.0, true));
  CHECK_NOTHROW(make_element(0.5, 0.0, 0.5 + 5e-13, 0.0));
}

TEST_CASE("randomised constructions never exceed unit power") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0), ph(-10.0, 10.0);
  int accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    const double bt = u(rng), br = u(rng);
    if (bt + br > 1.0 + kPassivityTolerance) {
      CHECK_THROWS_AS(make_element(bt, 0.0, br, 0.0), Error);
      continue;
    }
    const auto e = make_element(bt, ph(rng), br, ph(rng));
    REQUIRE(std::norm(e.transmission()) + std::norm(e.reflection()) <= 1.0 + kPassivityTolerance);
    ++accepted;
  }
  CHECK(accepted > 5000);
}

TEST_CASE("phases round-trip modulo a full turn") {
  for (double p : {-7.0, -kPi, 0.0, 1.0, kTwoPi, 20.0}) {
    const auto e = make_element(0.5, p, 0.5, -p);
    CHECK(std::abs(e.transmission() / std::sqrt(0.5) - std::polar(1.0, p)) < 1e-12);
    CHECK(e.t_phase() >= 0.0);
    CHECK(e.t_phase() < kTwoPi);
  }
}

TEST_CASE("impedance mapping special cases") {
  const auto open = coefficients_from_impedance({{0.0, 0.0}, {0.0, 0.0}});
  CHECK(std::abs(open.transmission - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(open.reflection) < 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  const double eta = kFreeSpaceImpedance;
  for (int i = 0; i < 1000; ++i) {
    const cplx y(u(rng), u(rng));
    const auto c = coefficients_from_impedance({y, eta * eta * y});
    REQUIRE(std::abs(c.reflection) < 1e-12);
  }

  // 2 + eta*Y = 0
  CHECK(code_of([&] { coefficients_from_impedance({{-2.0 / eta, 0.0}, {1.0, 0.0}}); }) ==
        ErrorCode::DegenerateImpedance);
  // 2 eta + Z = 0
  CHECK(code_of([&] { coefficients_from_impedance({{0.0, 0.0}, {-2.0 * eta, 0.0}}); }) ==
        ErrorCode::DegenerateImpedance);
}

TEST_CASE("impedance mapping agrees with a 50-digit evaluation") {
  using mp = boost::multiprecision::cpp_complex_50;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uy(-0.02, 0.02), uz(-800.0, 800.0);
  for (int i = 0; i < 100; ++i) {
    const cplx y(uy(rng), uy(rng)), z(uz(rng), uz(rng));
    const auto c = coefficients_from_impedance({y, z});

    const mp eta(kFreeSpaceImpedance), Y(y.real(), y.imag()), Z(z.real(), z.imag());
    const mp two(2);
    const mp r = -two * (eta * eta * Y - Z) / ((two + eta * eta * Y) * (two * eta + Z));
    const mp t = (two - eta * Y) / (two + eta * Y) - r;
    const cplx r_ref(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    const cplx t_ref(static_cast<double>(t.real()), static_cast<double>(t.imag()));
    CHECK(std::abs(c.reflection - r_ref) <= 1e-10 * std::abs(r_ref) + 1e-300);
    CHECK(std::abs(c.transmission - t_ref) <= 1e-10 * std::abs(t_ref));
  }
}

TEST_CASE("aperture geometry") {
  const Aperture a(2, 3, 0.005, 0.01);
  REQUIRE(a.size() == 6);
  CHECK(a.positions()[0].x == doctest::Approx(-0.005));
  CHECK(a.positions()[0].y == doctest::Approx(-0.0025));
  CHECK(a.positions()[5].x == doctest::Approx(0.005));
  CHECK(a.element_area() == doctest::Approx(0.005 * 0.005));
  CHECK(a.largest_dimension() == doctest::Approx(std::hypot(0.01, 0.005)));
  CHECK(Aperture(1, 1, 0.005, 0.01).largest_dimension() == doctest::Approx(std::sqrt(2.0) * 0.005));
  CHECK(code_of([] { Aperture(0, 3, 0.005, 0.01); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("conventional surface splits elements into disjoint groups") {
  const Aperture a(1, 8, 0.005, 0.01);
  const std::vector<double> zeros(8, 0.0);
  const auto s = conventional_surface(a, 3, 5, zeros, zeros);
  const auto t = transfer_diagonal(s, Side::Transmit);
  const auto r = transfer_diagonal(s, Side::Reflect);
  const double expect_t[] = {0, 0, 0, 0, 0, 1, 1, 1};
  for (std::size_t m = 0; m < 8; ++m) {
    CHECK(std::abs(t[m]) == doctest::Approx(expect_t[m]));
    CHECK(std::abs(t[m]) * std::abs(r[m]) == 0.0);
  }
  CHECK(code_of([&] { conventional_surface(a, 3, 4, zeros, zeros); }) ==
        ErrorCode::PartitionMismatch);
}

TEST_CASE("star surface transfer diagonal") {
  const Aperture a(1, 2, 0.005, 0.01);
  const std::vector<double> tp{0.0, 0.0}, rp{kPi / 2, kPi / 2};
  const auto s = uniform_star_surface(a, 0.25, 0.6, tp, rp);
  const auto t = transfer_diagonal(s, Side::Transmit);
  const auto r = transfer_diagonal(s, Side::Reflect);
  CHECK(std::abs(t[1] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(r[0] - cplx(0.0, std::sqrt(0.6))) < 1e-15);
  const std::vector<double> short_phase{0.0};
  CHECK(code_of([&] { uniform_star_surface(a, 0.5, 0.5, short_phase, rp); }) ==
        ErrorCode::LengthMismatch);
}
