/* SPDX-License-Identifier: Apache-2.0
 *
 * starris: STAR-RIS channel modelling and outage analysis
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 */

/* C interface of the starris shared library.
 *
 * Every fallible function returns a starris_status. On failure the thread's
 * last error message is available from starris_last_error() until the next
 * call on the same thread. Objects are opaque handles created by *_create /
 * *_load functions and released by the matching *_destroy. Complex numbers
 * cross the boundary as starris_complex {re, im}.
 */

#ifndef STARRIS_H
#define STARRIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(STARRIS_BUILDING_LIBRARY)
#define STARRIS_API __attribute__((visibility("default")))
#else
#define STARRIS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum starris_status {
  STARRIS_OK = 0,
  STARRIS_E_INVALID_ARGUMENT = 1,
  STARRIS_E_PASSIVITY = 2,
  STARRIS_E_DEGENERATE_IMPEDANCE = 3,
  STARRIS_E_LENGTH_MISMATCH = 4,
  STARRIS_E_PARTITION_MISMATCH = 5,
  STARRIS_E_NON_POSITIVE_DISTANCE = 6,
  STARRIS_E_TOO_CLOSE = 7,
  STARRIS_E_EMPTY_REGION = 8,
  STARRIS_E_INSUFFICIENT_POINTS = 9,
  STARRIS_E_ZERO_PROBABILITY = 10,
  STARRIS_E_RESOLUTION = 11,
  STARRIS_E_SCHEMA = 12,
  STARRIS_E_IO = 13,
  STARRIS_E_INTERNAL = 99
} starris_status;

typedef enum starris_side { STARRIS_SIDE_T = 0, STARRIS_SIDE_R = 1 } starris_side;

typedef enum starris_kind { STARRIS_KIND_STAR = 0, STARRIS_KIND_CONVENTIONAL = 1 } starris_kind;

typedef enum starris_command {
  STARRIS_CMD_VALIDATE = 0,
  STARRIS_CMD_BOUNDARY = 1,
  STARRIS_CMD_COVERAGE = 2,
  STARRIS_CMD_GAIN_PROFILE = 3,
  STARRIS_CMD_OUTAGE = 4
} starris_command;

typedef struct starris_complex {
  double re;
  double im;
} starris_complex;

typedef struct starris_surface starris_surface;
typedef struct starris_scenario starris_scenario;
typedef struct starris_result starris_result;

STARRIS_API const char* starris_version(void);
STARRIS_API const char* starris_status_string(starris_status status);
STARRIS_API const char* starris_last_error(void);

/* ---- element and surface model ---------------------------------------- */

STARRIS_API starris_status starris_coefficients_from_impedance(starris_complex admittance,
                                                               starris_complex impedance,
                                                               double eta0, starris_complex* t,
                                                               starris_complex* r);

/* STARRIS_OK when the element is admissible, STARRIS_E_PASSIVITY when
 * beta_t + beta_r > 1 (unless lossless_override), STARRIS_E_INVALID_ARGUMENT
 * for fractions outside [0, 1]. */
STARRIS_API starris_status starris_check_element(double beta_t, double phase_t, double beta_r,
                                                 double phase_r, int lossless_override);

/* Phase arrays may be NULL (all zero); otherwise they hold rows*cols values. */
STARRIS_API starris_status starris_surface_create_star(size_t rows, size_t cols, double spacing_m,
                                                       double wavelength_m, double beta_t,
                                                       double beta_r, const double* t_phases,
                                                       const double* r_phases,
                                                       int lossless_override,
                                                       starris_surface** out);
STARRIS_API starris_status starris_surface_create_conventional(size_t rows, size_t cols,
                                                               double spacing_m,
                                                               double wavelength_m, size_t m_t,
                                                               size_t m_r, const double* t_phases,
                                                               const double* r_phases,
                                                               starris_surface** out);
STARRIS_API void starris_surface_destroy(starris_surface* surface);
STARRIS_API size_t starris_surface_size(const starris_surface* surface);
/* Writes the diagonal of Phi^T or Phi^R; len must equal the element count. */
STARRIS_API starris_status starris_surface_transfer(const starris_surface* surface,
                                                    starris_side side, starris_complex* out,
                                                    size_t len);
STARRIS_API starris_status starris_surface_field_boundary(const starris_surface* surface,
                                                          double* out);

/* ---- channel ------------------------------------------------------------ */

STARRIS_API double starris_leaning_factor(double theta);
STARRIS_API starris_status starris_field_boundary(size_t rows, size_t cols, double spacing_m,
                                                  double wavelength_m, double* out);

/* Near-field channel at rx for a spherical wave from tx (both in meters). */
STARRIS_API starris_status starris_near_field_channel(const starris_surface* surface,
                                                      const double tx[3], const double rx[3],
                                                      starris_side side, int include_leaning,
                                                      starris_complex* out);

/* ---- beam steering ------------------------------------------------------ */

typedef struct starris_steering {
  double angle_t_rad;
  double angle_r_rad;
  double azimuth_rad;
  double tx_position_m[3];
  int plane_wave; /* 0: spherical incidence (default), 1: plane wave */
} starris_steering;

STARRIS_API starris_status starris_cophase_phases(size_t rows, size_t cols, double spacing_m,
                                                  double wavelength_m,
                                                  const starris_steering* steering,
                                                  starris_side side, double* out, size_t len);

/* ---- outage analysis ---------------------------------------------------- */

typedef struct starris_outage_params {
  starris_kind kind;
  size_t m;  /* STAR element count */
  double beta_t;
  double beta_r;
  size_t m_t; /* conventional partition */
  size_t m_r;
  starris_side group;
  double k_s;
  double omega_s;
  double k_d;
  double omega_d;
  double w_k;
  double sigma0_sq;
  double gamma_k;
  int lossless_override;
  int beta_in_pdf; /* nonzero (default): (beta)^(-M/2) closed form */
} starris_outage_params;

STARRIS_API void starris_outage_params_default(starris_outage_params* params);
STARRIS_API starris_status starris_asymptotic_outage(const starris_outage_params* params,
                                                     double gamma_t, double* out);
STARRIS_API starris_status starris_oracle_outage(const starris_outage_params* params,
                                                 double gamma_t, size_t resolution, double* out);
STARRIS_API starris_status starris_monte_carlo_outage(const starris_outage_params* params,
                                                      double gamma_t, uint64_t trials,
                                                      uint64_t max_trials, uint64_t seed,
                                                      int workers, double* probability,
                                                      double* halfwidth, uint64_t* trials_used);
STARRIS_API starris_status starris_diversity_order(const double* gamma_t, const double* probability,
                                                   size_t n, double tail_fraction, double* out);

/* ---- scenarios and commands --------------------------------------------- */

STARRIS_API starris_status starris_scenario_load_file(const char* path, starris_scenario** out);
STARRIS_API starris_status starris_scenario_load_preset(const char* name, starris_scenario** out);
STARRIS_API starris_status starris_scenario_parse(const char* json, starris_scenario** out);
STARRIS_API void starris_scenario_destroy(starris_scenario* scenario);
STARRIS_API starris_status starris_scenario_set_seed(starris_scenario* scenario, uint64_t seed);
/* Resolved scenario as JSON; release with starris_string_free. */
STARRIS_API starris_status starris_scenario_to_json(const starris_scenario* scenario, char** out);
STARRIS_API void starris_string_free(char* text);

STARRIS_API size_t starris_preset_count(void);
STARRIS_API const char* starris_preset_name(size_t index);

/* Runs a command. A non-OK status means the command could not be attempted;
 * command-level failures are carried by starris_result_exit_code (0 ok,
 * 1 validate warnings, 2 schema/lint errors, 3 computation error, 4 outage
 * slope fit impossible). out_dir may be NULL for validate and boundary. */
STARRIS_API starris_status starris_run(const starris_scenario* scenario, starris_command command,
                                       const char* out_dir, int workers, starris_result** out);
STARRIS_API int starris_result_exit_code(const starris_result* result);
STARRIS_API const char* starris_result_report(const starris_result* result);
STARRIS_API size_t starris_result_file_count(const starris_result* result);
STARRIS_API const char* starris_result_file(const starris_result* result, size_t index);
STARRIS_API void starris_result_destroy(starris_result* result);

#ifdef __cplusplus
}
#endif

#endif /* STARRIS_H */
