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
#include <cstdint>
#include <optional>
#include <vector>

#include "starris/channel.hpp"
#include "starris/geometry.hpp"
#include "starris/surface.hpp"

namespace starris {

struct LinkBudget {
  double w_k = 1.0;        // power-allocation amplitude
  double sigma0_sq = 1.0;  // noise power
  double gamma_k = 1.0;    // target SNR

  void validate() const;
};

// Received SNR gamma_t * |H|^2 * w_k^2 / sigma0^2. With the default
// gamma_t = 1 this is the plain |H|^2 w_k^2 / sigma0^2.
double snr(cplx channel, const LinkBudget& budget, double gamma_t = 1.0);

enum class SurfaceKind { Star, Conventional };

// One receiver group served either by a STAR surface (every element on both
// sides, power split beta_t / beta_r) or by the reflect-only + transmit-only
// composite with m_t / m_r elements.
//
// Phases are assumed coherent, so the overall channel magnitude reduces to
//   |H| = a * sum_m |r_m| + |h|
// with element scale a. `beta_in_pdf` selects how beta enters a:
//   true  (default): a = beta^(1/4), whose small-x density slope carries
//                    beta^(-1/2) per element; this reproduces the closed form
//                    with its (beta)^(-M/2) factor.
//   false:           a = beta^(1/2), the literal amplitude scaling; the closed
//                    form then carries beta^(-M).
struct OutageScenario {
  SurfaceKind kind = SurfaceKind::Star;
  std::size_t m = 1;
  double beta_t = 0.5;
  double beta_r = 0.5;
  std::size_t m_t = 0;
  std::size_t m_r = 0;
  Side group = Side::Transmit;
  RiceanParams surface{1.0, 1.0};
  RiceanParams direct{1.0, 1.0};
  LinkBudget budget;
  bool lossless_override = false;
  bool beta_in_pdf = true;

  void validate() const;
  // Elements contributing to the group: M for STAR, M_t or M_r otherwise.
  std::size_t serving_elements() const;
  // beta of the group's side; 1 for the composite surface.
  double beta() const;
  double element_scale() const;
  // Largest |H| that still counts as outage: sigma0 / w_k * sqrt(gamma_k / gamma_t).
  double threshold(double gamma_t) const;
  double gamma_t_for_threshold(double threshold) const;
};

struct MonteCarloOptions {
  std::uint64_t trials = 100000;
  // Escalation cap; trials grow x10 while fewer than min_events outages occur.
  std::uint64_t max_trials = 10000000;
  std::uint64_t min_events = 50;
  int workers = 1;
};

struct OutageEstimate {
  double probability = 0.0;
  double halfwidth = 0.0;  // 95% normal-approximation binomial interval
  std::uint64_t trials = 0;
  std::uint64_t events = 0;
};

// Trials run in fixed blocks, each drawing from RngStream(seed, block), so the
// estimate is a pure function of (scenario, gamma_t, seed, trial budget).
inline constexpr std::uint64_t kTrialBlock = 1000;

OutageEstimate monte_carlo_outage(const OutageScenario& scenario, double gamma_t,
                                  std::uint64_t seed, const MonteCarloOptions& options = {});

// Closed-form high-SNR outage. Both are evaluated in log space and may exceed
// 1 at low gamma_t.
double asymptotic_outage_star(const OutageScenario& scenario, double gamma_t);
double asymptotic_outage_conventional(const OutageScenario& scenario, double gamma_t);
double asymptotic_outage(const OutageScenario& scenario, double gamma_t);
double log_asymptotic_outage(const OutageScenario& scenario, double gamma_t);

struct OracleOptions {
  std::size_t resolution = 4096;
  double tolerance = 0.005;  // allowed relative change when doubling resolution
};

// Pr{a sum |r_m| + |h| <= x} by direct trapezoidal convolution of the exact
// Ricean magnitude densities on a uniform grid over [0, min(x, support)].
// No resolution check.
double coherent_sum_cdf(const OutageScenario& scenario, double x, std::size_t resolution);

// Outage at gamma_t from coherent_sum_cdf, checked against a doubled grid.
// Throws ResolutionTooCoarse when the two disagree by more than tolerance.
double outage_oracle_numeric(const OutageScenario& scenario, double gamma_t,
                             const OracleOptions& options = {});

// gamma_t at which the oracle outage equals `target` (bisection on the
// threshold in log space).
double oracle_gamma_t_for_outage(const OutageScenario& scenario, double target,
                                 const OracleOptions& options = {});

// mean + 12 standard deviations of a * sum |r_m| + |h|
double coherent_sum_support(const OutageScenario& scenario);

struct OutagePoint {
  double gamma_t = 0.0;
  double probability = 0.0;
  std::uint64_t trials = 0;  // 0 marks an exact (closed-form or oracle) value
  double halfwidth = 0.0;
};

struct OutageCurve {
  std::vector<OutagePoint> points;

  void validate() const;
};

// Least-squares slope of log P against log gamma_t over the highest
// `tail_fraction` of the points, reported as a positive diversity order.
double estimate_diversity_order(const OutageCurve& curve, double tail_fraction = 0.4);

}  // namespace starris
