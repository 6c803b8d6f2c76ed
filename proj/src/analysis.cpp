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

#include "starris/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "starris/error.hpp"
#include "starris/rng.hpp"

namespace starris {

void LinkBudget::validate() const {
  if (!(w_k > 0.0) || !(sigma0_sq > 0.0) || !(gamma_k > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "w_k, sigma0^2 and gamma_k must be positive");
  }
}

double snr(cplx channel, const LinkBudget& budget, double gamma_t) {
  return gamma_t * std::norm(channel) * budget.w_k * budget.w_k / budget.sigma0_sq;
}

void OutageScenario::validate() const {
  surface.validate();
  direct.validate();
  budget.validate();
  if (kind == SurfaceKind::Star) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "STAR surface needs at least one element");
    // make_element carries the range and passivity checks.
    (void)make_element(beta_t, 0.0, beta_r, 0.0, lossless_override);
    if (beta() <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "the served side has zero power fraction");
    }
  }
}

std::size_t OutageScenario::serving_elements() const {
  if (kind == SurfaceKind::Star) return m;
  return group == Side::Transmit ? m_t : m_r;
}

double OutageScenario::beta() const {
  if (kind == SurfaceKind::Conventional) return 1.0;
  return group == Side::Transmit ? beta_t : beta_r;
}

double OutageScenario::element_scale() const {
  return beta_in_pdf ? std::pow(beta(), 0.25) : std::sqrt(beta());
}

double OutageScenario::threshold(double gamma_t) const {
  if (!(gamma_t > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma_t must be positive");
  return std::sqrt(budget.sigma0_sq) / budget.w_k * std::sqrt(budget.gamma_k / gamma_t);
}

double OutageScenario::gamma_t_for_threshold(double x) const {
  return budget.gamma_k * budget.sigma0_sq / (budget.w_k * budget.w_k * x * x);
}

OutageEstimate monte_carlo_outage(const OutageScenario& scenario, double gamma_t,
                                  std::uint64_t seed, const MonteCarloOptions& options) {
  scenario.validate();
  if (options.trials < 10000) {
    throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least 1e4 trials");
  }
  const double limit = scenario.threshold(gamma_t);
  const double scale = scenario.element_scale();
  const std::size_t serving = scenario.serving_elements();

  auto run_blocks = [&](std::uint64_t first, std::uint64_t last) {
    std::uint64_t events = 0;
    const auto begin = static_cast<long long>(first);
    const auto end = static_cast<long long>(last);
#pragma omp parallel for schedule(static) reduction(+ : events) \
    num_threads(options.workers > 0 ? options.workers : 1)
    for (long long b = begin; b < end; ++b) {
      RngStream rng(seed, static_cast<std::uint64_t>(b));
      std::uint64_t local = 0;
      for (std::uint64_t t = 0; t < kTrialBlock; ++t) {
        double sum = 0.0;
        for (std::size_t m = 0; m < serving; ++m)
          sum += std::abs(sample_ricean(scenario.surface, rng));
        const double h = std::abs(sample_ricean(scenario.direct, rng));
        if (scale * sum + h < limit) ++local;
      }
      events += local;
    }
    return events;
  };

  auto blocks_for = [](std::uint64_t trials) { return (trials + kTrialBlock - 1) / kTrialBlock; };
  const std::uint64_t cap_blocks =
      std::max(blocks_for(options.max_trials), blocks_for(options.trials));

  std::uint64_t done = 0;
  std::uint64_t target = blocks_for(options.trials);
  std::uint64_t events = 0;
  for (;;) {
    events += run_blocks(done, target);
    done = target;
    if (events >= options.min_events || done >= cap_blocks) break;
    target = std::min(done * 10, cap_blocks);
  }

  OutageEstimate est;
  est.trials = done * kTrialBlock;
  est.events = events;
  est.probability = static_cast<double>(events) / static_cast<double>(est.trials);
  est.halfwidth =
      1.96 * std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(est.trials));
  return est;
}

double log_asymptotic_outage(const OutageScenario& scenario, double gamma_t) {
  scenario.validate();
  const auto n = static_cast<double>(scenario.serving_elements());
  const double ks = scenario.surface.k;
  const double kd = scenario.direct.k;
  const auto& b = scenario.budget;

  double log_p = (n + 1.0) * std::log(2.0) + n * std::log(ks + 1.0) + std::log(kd + 1.0) -
                 std::lgamma(2.0 * n + 3.0) - n * std::log(scenario.surface.omega) -
                 std::log(scenario.direct.omega) - (2.0 * n + 2.0) * std::log(b.w_k) - n * ks - kd +
                 (n + 1.0) * std::log(b.sigma0_sq) + (n + 1.0) * std::log(b.gamma_k) -
                 (n + 1.0) * std::log(gamma_t);
  if (scenario.kind == SurfaceKind::Star) {
    const double exponent = scenario.beta_in_pdf ? -0.5 * n : -n;
    log_p += exponent * std::log(scenario.beta());
  }
  return log_p;
}

double asymptotic_outage_star(const OutageScenario& scenario, double gamma_t) {
  if (scenario.kind != SurfaceKind::Star) {
    throw Error(ErrorCode::InvalidArgument, "scenario is not a STAR surface");
  }
  return std::exp(log_asymptotic_outage(scenario, gamma_t));
}

double asymptotic_outage_conventional(const OutageScenario& scenario, double gamma_t) {
  if (scenario.kind != SurfaceKind::Conventional) {
    throw Error(ErrorCode::InvalidArgument, "scenario is not a conventional surface");
  }
  return std::exp(log_asymptotic_outage(scenario, gamma_t));
}

double asymptotic_outage(const OutageScenario& scenario, double gamma_t) {
  return std::exp(log_asymptotic_outage(scenario, gamma_t));
}

void OutageCurve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.gamma_t > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma_t must be positive");
    if (i > 0 && !(p.gamma_t > points[i - 1].gamma_t)) {
      throw Error(ErrorCode::InvalidArgument, "gamma_t must be strictly increasing");
    }
    if (!(p.probability >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "outage probabilities must be non-negative");
    }
  }
}

double estimate_diversity_order(const OutageCurve& curve, double tail_fraction) {
  curve.validate();
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "tail fraction must lie in (0, 1]");
  }
  const std::size_t n = curve.points.size();
  const auto window =
      static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n) - 1e-9));
  if (window < 3) {
    throw Error(
        ErrorCode::InsufficientPoints,
        "diversity fit needs >= 3 points in the tail window, got " + std::to_string(window));
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = n - window; i < n; ++i) {
    const auto& p = curve.points[i];
    if (!(p.probability > 0.0)) {
      throw Error(ErrorCode::ZeroProbability, "zero outage probability inside the tail window");
    }
    xs.push_back(std::log(p.gamma_t));
    ys.push_back(std::log(p.probability));
  }
  const auto w = static_cast<double>(window);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / w;
    my += ys[i] / w;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  return -slope;
}

}  // namespace starris
