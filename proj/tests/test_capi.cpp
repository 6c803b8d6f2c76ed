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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "starris/starris.h"

TEST_CASE("status strings and version") {
  CHECK(std::strlen(starris_version()) > 0);
  CHECK(std::string(starris_status_string(STARRIS_E_PASSIVITY)) == "passivity violation");
  CHECK(std::string(starris_status_string(STARRIS_OK)) == "ok");
}

TEST_CASE("element and impedance checks") {
  CHECK(starris_check_element(0.4, 0.0, 0.6, 1.0, 0) == STARRIS_OK);
  CHECK(starris_check_element(0.7, 0.0, 0.6, 1.0, 0) == STARRIS_E_PASSIVITY);
  CHECK(std::strlen(starris_last_error()) > 0);
  CHECK(starris_check_element(1.0, 0.0, 1.0, 0.0, 1) == STARRIS_OK);
  CHECK(starris_check_element(-1.0, 0.0, 0.5, 0.0, 0) == STARRIS_E_INVALID_ARGUMENT);

  starris_complex t{}, r{};
  CHECK(starris_coefficients_from_impedance({0, 0}, {0, 0}, 376.73, &t, &r) == STARRIS_OK);
  CHECK(t.re == doctest::Approx(1.0));
  CHECK(r.re == doctest::Approx(0.0));
  CHECK(starris_coefficients_from_impedance({-2.0 / 376.73, 0}, {0, 0}, 376.73, &t, &r) ==
        STARRIS_E_DEGENERATE_IMPEDANCE);
  CHECK(starris_coefficients_from_impedance({0, 0}, {0, 0}, 376.73, nullptr, &r) ==
        STARRIS_E_INVALID_ARGUMENT);
}

TEST_CASE("surface handles") {
  starris_surface* s = nullptr;
  REQUIRE(starris_surface_create_star(2, 2, 0.005, 0.01, 0.25, 0.75, nullptr, nullptr, 0, &s) ==
          STARRIS_OK);
  CHECK(starris_surface_size(s) == 4);
  std::vector<starris_complex> diag(4);
  REQUIRE(starris_surface_transfer(s, STARRIS_SIDE_T, diag.data(), diag.size()) == STARRIS_OK);
  CHECK(diag[0].re == doctest::Approx(0.5));
  CHECK(starris_surface_transfer(s, STARRIS_SIDE_T, diag.data(), 3) == STARRIS_E_LENGTH_MISMATCH);

  const double tx[3] = {0, 0, -1}, rx[3] = {0, 0, 1}, touch[3] = {0.0025, 0.0025, 0.0};
  starris_complex g{};
  CHECK(starris_near_field_channel(s, tx, rx, STARRIS_SIDE_T, 1, &g) == STARRIS_OK);
  CHECK(std::hypot(g.re, g.im) > 0.0);
  CHECK(starris_near_field_channel(s, tx, touch, STARRIS_SIDE_T, 1, &g) == STARRIS_E_TOO_CLOSE);
  starris_surface_destroy(s);
  starris_surface_destroy(nullptr);

  CHECK(starris_surface_create_conventional(1, 8, 0.005, 0.01, 3, 4, nullptr, nullptr, &s) ==
        STARRIS_E_PARTITION_MISMATCH);
  CHECK(starris_surface_create_star(1, 1, 0.005, 0.01, 0.8, 0.8, nullptr, nullptr, 0, &s) ==
        STARRIS_E_PASSIVITY);

  double b = 0.0;
  CHECK(starris_field_boundary(16, 16, 0.005, 0.01, &b) == STARRIS_OK);
  CHECK(b == doctest::Approx(2.25));
  CHECK(starris_leaning_factor(0.0) == 1.0);
}

TEST_CASE("cophase phases through the C interface") {
  starris_steering st{0.3, 0.2, 0.0, {0.0, 0.0, -1.0}, 0};
  std::vector<double> p(16);
  CHECK(starris_cophase_phases(4, 4, 0.005, 0.01, &st, STARRIS_SIDE_T, p.data(), p.size()) ==
        STARRIS_OK);
  for (double x : p) {
    CHECK(x >= 0.0);
    CHECK(x < 2.0 * M_PI);
  }
  CHECK(starris_cophase_phases(4, 4, 0.005, 0.01, &st, STARRIS_SIDE_T, p.data(), 3) ==
        STARRIS_E_LENGTH_MISMATCH);
}

TEST_CASE("outage functions") {
  starris_outage_params p;
  starris_outage_params_default(&p);
  p.m = 1;
  p.k_s = 0.0;
  p.k_d = 0.0;
  p.beta_t = 1.0;
  p.beta_r = 1.0;
  p.lossless_override = 1;
  double out = 0.0;
  CHECK(starris_asymptotic_outage(&p, 100.0, &out) == STARRIS_OK);
  CHECK(out == doctest::Approx(1.0 / 60000.0));
  double oracle = 0.0;
  CHECK(starris_oracle_outage(&p, 100.0, 4096, &oracle) == STARRIS_OK);
  CHECK(oracle == doctest::Approx(out).epsilon(0.05));
  CHECK(starris_oracle_outage(&p, 100.0, 100, &oracle) == STARRIS_E_INVALID_ARGUMENT);

  double prob = 0.0, hw = 0.0;
  uint64_t used = 0;
  CHECK(starris_monte_carlo_outage(&p, 1.0, 10000, 10000, 3, 1, &prob, &hw, &used) == STARRIS_OK);
  CHECK(used == 10000);
  CHECK(prob > 0.0);

  const double g[4] = {1, 10, 100, 1000};
  const double pr[4] = {1, 1e-2, 1e-4, 1e-6};
  CHECK(starris_diversity_order(g, pr, 4, 1.0, &out) == STARRIS_OK);
  CHECK(out == doctest::Approx(2.0));
  CHECK(starris_diversity_order(g, pr, 4, 0.4, &out) == STARRIS_E_INSUFFICIENT_POINTS);
}

TEST_CASE("scenarios and commands") {
  CHECK(starris_preset_count() == 6);
  CHECK(starris_preset_name(99) == nullptr);

  starris_scenario* scn = nullptr;
  CHECK(starris_scenario_parse("{\"bogus\": 1}", &scn) == STARRIS_E_SCHEMA);
  CHECK(starris_scenario_load_file("/nonexistent/file.json", &scn) == STARRIS_E_IO);
  REQUIRE(starris_scenario_load_preset("fig3b.star", &scn) == STARRIS_OK);
  CHECK(starris_scenario_set_seed(scn, 5) == STARRIS_OK);

  char* text = nullptr;
  REQUIRE(starris_scenario_to_json(scn, &text) == STARRIS_OK);
  CHECK(std::string(text).find("\"seed\": 5") != std::string::npos);
  starris_string_free(text);

  starris_result* res = nullptr;
  REQUIRE(starris_run(scn, STARRIS_CMD_BOUNDARY, nullptr, 1, &res) == STARRIS_OK);
  CHECK(starris_result_exit_code(res) == 0);
  CHECK(std::string(starris_result_report(res)).find("225 wavelengths") != std::string::npos);
  CHECK(starris_result_file_count(res) == 0);
  starris_result_destroy(res);

  CHECK(starris_run(scn, STARRIS_CMD_VALIDATE, nullptr, 0, &res) == STARRIS_E_INVALID_ARGUMENT);
  starris_scenario_destroy(scn);

  REQUIRE(starris_scenario_load_preset("fig4", &scn) == STARRIS_OK);
  const auto dir = std::filesystem::temp_directory_path() / "starris_capi_profile";
  std::filesystem::remove_all(dir);
  REQUIRE(starris_run(scn, STARRIS_CMD_GAIN_PROFILE, dir.string().c_str(), 1, &res) == STARRIS_OK);
  CHECK(starris_result_exit_code(res) == 0);
  REQUIRE(starris_result_file_count(res) == 2);
  CHECK(std::filesystem::exists(starris_result_file(res, 0)));
  starris_result_destroy(res);
  starris_scenario_destroy(scn);
}
