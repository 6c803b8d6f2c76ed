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

// Numerical convolution route to the outage probability of the coherent
// channel magnitude. Independent of the closed-form asymptotics: it uses the
// full Bessel-form Ricean density, not its small-argument series.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "starris/analysis.hpp"
#include "starris/error.hpp"

namespace starris {

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments ricean_magnitude_moments(const RiceanParams& p) {
  const double los = std::sqrt(p.k * p.omega / (p.k + 1.0));
  const double sigma = std::sqrt(p.omega / (2.0 * (p.k + 1.0)));
  const double upper = los + 40.0 * sigma;
  auto f = [&](double x) { return x * ricean_pdf(p, x); };
  const double mean =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 15, 1e-13);
  return {mean, std::max(p.omega - mean * mean, 0.0)};
}

// c[n] = h * sum_{i=0..n} w_i a[i] b[n-i], trapezoid weights on the end points.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b, double h) {
  const std::size_t n = a.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.5 * (a[0] * b[k] + a[k] * b[0]);
    for (std::size_t i = 1; i < k; ++i) acc += a[i] * b[k - i];
    c[k] = acc * h;
  }
  return c;
}

}  // namespace

double coherent_sum_support(const OutageScenario& scenario) {
  const double a = scenario.element_scale();
  const auto n = static_cast<double>(scenario.serving_elements());
  const Moments el = ricean_magnitude_moments(scenario.surface);
  const Moments dl = ricean_magnitude_moments(scenario.direct);
  const double mean = n * a * el.mean + dl.mean;
  const double var = n * a * a * el.variance + dl.variance;
  return mean + 12.0 * std::sqrt(var);
}

double coherent_sum_cdf(const OutageScenario& scenario, double x, std::size_t resolution) {
  scenario.validate();
  if (resolution < 16) throw Error(ErrorCode::InvalidArgument, "oracle resolution too small");
  if (!(x > 0.0)) return 0.0;

  // Every summand is non-negative, so the density of the sum on [0, x] only
  // involves the component densities on [0, x].
  const double upper = std::min(x, coherent_sum_support(scenario));
  const std::size_t points = resolution + 1;
  const double h = upper / static_cast<double>(resolution);
  const double a = scenario.element_scale();

  std::vector<double> direct(points);
  std::vector<double> element(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double xi = h * static_cast<double>(i);
    direct[i] = ricean_pdf(scenario.direct, xi);
    element[i] = ricean_pdf(scenario.surface, xi / a) / a;
  }

  std::vector<double> density = direct;
  for (std::size_t m = 0; m < scenario.serving_elements(); ++m)
    density = convolve(density, element, h);

  double cdf = 0.5 * (density.front() + density.back());
  for (std::size_t i = 1; i + 1 < points; ++i) cdf += density[i];
  return std::clamp(cdf * h, 0.0, 1.0);
}

double outage_oracle_numeric(const OutageScenario& scenario, double gamma_t,
                             const OracleOptions& options) {
  if (options.resolution < 4096) {
    throw Error(ErrorCode::InvalidArgument, "oracle resolution must be at least 4096 points");
  }
  const double x = scenario.threshold(gamma_t);
  const double coarse = coherent_sum_cdf(scenario, x, options.resolution);
  const double fine = coherent_sum_cdf(scenario, x, 2 * options.resolution);
  if (std::abs(fine - coarse) > options.tolerance * std::abs(fine)) {
    throw Error(ErrorCode::ResolutionTooCoarse,
                "oracle changed by more than the tolerance when doubling the grid");
  }
  return fine;
}

double oracle_gamma_t_for_outage(const OutageScenario& scenario, double target,
                                 const OracleOptions& options) {
  if (!(target > 0.0) || !(target < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "target outage must lie in (0, 1)");
  }
  // Bracket the threshold: the CDF is increasing in x.
  double lo = 1e-6;
  double hi = coherent_sum_support(scenario);
  while (coherent_sum_cdf(scenario, lo, options.resolution) > target) lo *= 0.1;
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (coherent_sum_cdf(scenario, mid, options.resolution) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi / lo < 1.0 + 1e-10) break;
  }
  const double x = std::sqrt(lo * hi);
  // Validates the resolution at the solution.
  const double gamma_t = scenario.gamma_t_for_threshold(x);
  (void)outage_oracle_numeric(scenario, gamma_t, options);
  return gamma_t;
}

}  // namespace starris
