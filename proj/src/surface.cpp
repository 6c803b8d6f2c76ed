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

#include "starris/surface.hpp"

#include <string>

#include "starris/error.hpp"

namespace starris {

ElementCoefficients make_element(double t_power, double t_phase, double r_power, double r_phase,
                                 bool lossless_override) {
  auto in_unit = [](double b) { return std::isfinite(b) && b >= 0.0 && b <= 1.0; };
  if (!in_unit(t_power) || !in_unit(r_power)) {
    throw Error(ErrorCode::InvalidArgument,
                "power fractions must lie in [0, 1], got beta_t=" + std::to_string(t_power) +
                    " beta_r=" + std::to_string(r_power));
  }
  if (!std::isfinite(t_phase) || !std::isfinite(r_phase)) {
    throw Error(ErrorCode::InvalidArgument, "element phases must be finite");
  }
  if (!lossless_override && t_power + r_power > 1.0 + kPassivityTolerance) {
    throw Error(ErrorCode::PassivityViolation,
                "beta_t + beta_r = " + std::to_string(t_power + r_power) + " exceeds 1");
  }
  ElementCoefficients e;
  e.t_power_ = t_power;
  e.t_phase_ = wrap_phase(t_phase);
  e.r_power_ = r_power;
  e.r_phase_ = wrap_phase(r_phase);
  return e;
}

ImpedanceCoefficients coefficients_from_impedance(const SurfaceImpedance& imp, double epsilon) {
  const double eta = imp.free_space_impedance;
  if (!(eta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "free-space impedance must be positive");
  }
  const cplx y = imp.electric_admittance;
  const cplx z = imp.magnetic_impedance;

  const cplx t_den = 2.0 + eta * y;
  const cplx r_den = (2.0 + eta * eta * y) * (2.0 * eta + z);
  if (std::abs(t_den) < epsilon || std::abs(r_den) < epsilon) {
    throw Error(ErrorCode::DegenerateImpedance, "impedance relation has a vanishing denominator");
  }
  const cplx r = -2.0 * (eta * eta * y - z) / r_den;
  const cplx t = (2.0 - eta * y) / t_den - r;
  return {t, r};
}

Aperture::Aperture(std::size_t rows, std::size_t cols, double spacing, double wavelength,
                   double element_area)
    : rows_(rows), cols_(cols), spacing_(spacing), wavelength_(wavelength) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "aperture needs at least one row and one column");
  }
  if (!(spacing > 0.0) || !(wavelength > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spacing and wavelength must be positive");
  }
  if (element_area < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "element area must be non-negative");
  }
  element_area_ = element_area > 0.0 ? element_area : spacing * spacing;

  positions_.reserve(rows * cols);
  const double x0 = 0.5 * static_cast<double>(cols - 1);
  const double y0 = 0.5 * static_cast<double>(rows - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      positions_.push_back(
          {(static_cast<double>(c) - x0) * spacing, (static_cast<double>(r) - y0) * spacing, 0.0});
    }
  }
}

double Aperture::largest_dimension() const {
  if (size() == 1) return std::sqrt(2.0) * spacing_;
  const double w = static_cast<double>(cols_ - 1) * spacing_;
  const double h = static_cast<double>(rows_ - 1) * spacing_;
  return std::hypot(w, h);
}

SurfaceConfig::SurfaceConfig(Aperture aperture, std::vector<ElementCoefficients> elements,
                             bool conventional, std::size_t m_t, std::size_t m_r)
    : aperture_(std::move(aperture)),
      elements_(std::move(elements)),
      conventional_(conventional),
      m_t_(m_t),
      m_r_(m_r) {
  if (elements_.size() != aperture_.size()) {
    throw Error(ErrorCode::LengthMismatch, "element count " + std::to_string(elements_.size()) +
                                               " does not match aperture size " +
                                               std::to_string(aperture_.size()));
  }
  if (conventional_ && m_t_ + m_r_ != elements_.size()) {
    throw Error(ErrorCode::PartitionMismatch, "M_t + M_r must equal M");
  }
}

namespace {

void check_phase_lengths(const Aperture& aperture, std::span<const double> t_phases,
                         std::span<const double> r_phases) {
  if (t_phases.size() != aperture.size() || r_phases.size() != aperture.size()) {
    throw Error(ErrorCode::LengthMismatch, "phase vectors must have one entry per element (M = " +
                                               std::to_string(aperture.size()) + ")");
  }
}

}  // namespace

SurfaceConfig uniform_star_surface(const Aperture& aperture, double t_power, double r_power,
                                   std::span<const double> t_phases,
                                   std::span<const double> r_phases, bool lossless_override) {
  check_phase_lengths(aperture, t_phases, r_phases);
  std::vector<ElementCoefficients> elements;
  elements.reserve(aperture.size());
  for (std::size_t m = 0; m < aperture.size(); ++m) {
    elements.push_back(make_element(t_power, t_phases[m], r_power, r_phases[m], lossless_override));
  }
  return SurfaceConfig(aperture, std::move(elements), false, 0, 0);
}

SurfaceConfig conventional_surface(const Aperture& aperture, std::size_t m_t, std::size_t m_r,
                                   std::span<const double> t_phases,
                                   std::span<const double> r_phases) {
  if (m_t + m_r != aperture.size()) {
    throw Error(ErrorCode::PartitionMismatch, "M_t + M_r = " + std::to_string(m_t + m_r) +
                                                  " but the aperture has " +
                                                  std::to_string(aperture.size()) + " elements");
  }
  check_phase_lengths(aperture, t_phases, r_phases);
  std::vector<ElementCoefficients> elements;
  elements.reserve(aperture.size());
  for (std::size_t m = 0; m < aperture.size(); ++m) {
    const bool reflects = m < m_r;
    elements.push_back(make_element(reflects ? 0.0 : 1.0, reflects ? 0.0 : t_phases[m],
                                    reflects ? 1.0 : 0.0, reflects ? r_phases[m] : 0.0));
  }
  return SurfaceConfig(aperture, std::move(elements), true, m_t, m_r);
}

std::vector<cplx> transfer_diagonal(const SurfaceConfig& config, Side side) {
  std::vector<cplx> diag;
  diag.reserve(config.size());
  for (const auto& e : config.elements()) diag.push_back(e.coefficient(side));
  return diag;
}

}  // namespace starris
