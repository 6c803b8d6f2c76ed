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

namespace starris {

// Tolerance applied to beta_t + beta_r <= 1.
inline constexpr double kPassivityTolerance = 1e-12;

// Characteristic impedance of free space in ohms.
inline constexpr double kFreeSpaceImpedance = 376.73;

enum class Side { Transmit, Reflect };

inline char side_letter(Side s) { return s == Side::Transmit ? 'T' : 'R'; }

// One element's transmission and reflection response, stored as power
// fractions and phases wrapped into [0, 2*pi).
class ElementCoefficients {
 public:
  ElementCoefficients() = default;

  double t_power() const { return t_power_; }
  double t_phase() const { return t_phase_; }
  double r_power() const { return r_power_; }
  double r_phase() const { return r_phase_; }

  cplx transmission() const { return std::polar(std::sqrt(t_power_), t_phase_); }
  cplx reflection() const { return std::polar(std::sqrt(r_power_), r_phase_); }
  cplx coefficient(Side s) const { return s == Side::Transmit ? transmission() : reflection(); }

 private:
  friend ElementCoefficients make_element(double, double, double, double, bool);

  double t_power_ = 0.0;
  double t_phase_ = 0.0;
  double r_power_ = 0.0;
  double r_phase_ = 0.0;
};

// Validates power fractions in [0, 1] and beta_t + beta_r <= 1 (up to
// kPassivityTolerance). With `lossless_override` the sum check is skipped so
// that beta_t = beta_r = 1 can be represented; each fraction must still lie
// in [0, 1].
ElementCoefficients make_element(double t_power, double t_phase, double r_power, double r_phase,
                                 bool lossless_override = false);

struct SurfaceImpedance {
  cplx electric_admittance;  // Y_m
  cplx magnetic_impedance;   // Z_m
  double free_space_impedance = kFreeSpaceImpedance;
};

struct ImpedanceCoefficients {
  cplx transmission;
  cplx reflection;
};

// Maps local surface impedances to (T, R) with
//   R = -2 (eta0^2 Y - Z) / ((2 + eta0^2 Y)(2 eta0 + Z))
//   T = (2 - eta0 Y) / (2 + eta0 Y) - R
// The mixed eta0 / eta0^2 factors are kept verbatim from the source model.
// No passivity check is applied to the result.
ImpedanceCoefficients coefficients_from_impedance(const SurfaceImpedance& imp,
                                                  double epsilon = 1e-12);

// Rectangular element grid in the z = 0 plane, centred on the origin.
// Element m = row * cols + col sits at x = (col - (cols-1)/2) * spacing,
// y = (row - (rows-1)/2) * spacing.
class Aperture {
 public:
  Aperture(std::size_t rows, std::size_t cols, double spacing, double wavelength,
           double element_area = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return positions_.size(); }
  double spacing() const { return spacing_; }
  double wavelength() const { return wavelength_; }
  double element_area() const { return element_area_; }
  std::span<const Vec3> positions() const { return positions_; }

  // Diagonal of the bounding rectangle of the element centres. A single
  // element uses its own physical diagonal, sqrt(2) * spacing.
  double largest_dimension() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  double spacing_;
  double wavelength_;
  double element_area_;
  std::vector<Vec3> positions_;
};

class SurfaceConfig {
 public:
  SurfaceConfig(Aperture aperture, std::vector<ElementCoefficients> elements, bool conventional,
                std::size_t m_t, std::size_t m_r);

  const Aperture& aperture() const { return aperture_; }
  std::span<const ElementCoefficients> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_conventional() const { return conventional_; }
  std::size_t m_t() const { return m_t_; }
  std::size_t m_r() const { return m_r_; }

 private:
  Aperture aperture_;
  std::vector<ElementCoefficients> elements_;
  bool conventional_;
  std::size_t m_t_;
  std::size_t m_r_;
};

// STAR surface: every element shares (beta_t, beta_r); phases per element.
SurfaceConfig uniform_star_surface(const Aperture& aperture, double t_power, double r_power,
                                   std::span<const double> t_phases,
                                   std::span<const double> r_phases,
                                   bool lossless_override = false);

// Composite reflect-only / transmit-only surface: the first m_r elements
// reflect with beta_r = 1, the last m_t elements transmit with beta_t = 1.
SurfaceConfig conventional_surface(const Aperture& aperture, std::size_t m_t, std::size_t m_r,
                                   std::span<const double> t_phases,
                                   std::span<const double> r_phases);

// Diagonal of Phi^T (Side::Transmit) or Phi^R (Side::Reflect).
std::vector<cplx> transfer_diagonal(const SurfaceConfig& config, Side side);

}  // namespace starris
