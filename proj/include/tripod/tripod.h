/* Copyright 2026 The tripod-polariton Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libtripod.
 *
 * Every function returns a tripod_status; results come back through out
 * parameters. On failure tripod_last_error() describes the problem for the
 * calling thread. Handles are opaque and owned by the caller, who releases
 * them with the matching *_destroy function (NULL is accepted). Strings
 * returned by the library stay valid until the owning handle is destroyed.
 */

#ifndef TRIPOD_TRIPOD_H_
#define TRIPOD_TRIPOD_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TRIPOD_BUILDING)
#    define TRIPOD_API __declspec(dllexport)
#  else
#    define TRIPOD_API __declspec(dllimport)
#  endif
#else
#  define TRIPOD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tripod_status {
  TRIPOD_OK = 0,
  TRIPOD_INVALID_ARGUMENT = 1,
  TRIPOD_DEGENERATE_FIELD = 2,
  TRIPOD_GRID_MISMATCH = 3,
  TRIPOD_DIVISION_BY_ZERO = 4,
  TRIPOD_RATIO_DRIFT = 5,
  TRIPOD_INSTABILITY = 6,
  TRIPOD_PARSE_ERROR = 7,
  TRIPOD_VALIDATION_ERROR = 8,
  TRIPOD_IO_ERROR = 9,
  TRIPOD_PRECONDITION = 10,
  TRIPOD_INTERNAL = 99
} tripod_status;

typedef struct tripod_grid tripod_grid;
typedef struct tripod_field tripod_field;
typedef struct tripod_slices tripod_slices;
typedef struct tripod_config tripod_config;
typedef struct tripod_report tripod_report;

TRIPOD_API const char* tripod_version(void);
TRIPOD_API const char* tripod_status_string(tripod_status status);
/* Message of the last failure on this thread, "" if none. */
TRIPOD_API const char* tripod_last_error(void);

/* Grids: n points per axis (power of two >= 16) on [-extent, extent). */
TRIPOD_API tripod_status tripod_grid_create(int n, double extent,
                                            tripod_grid** out);
TRIPOD_API void tripod_grid_destroy(tripod_grid* grid);
TRIPOD_API int tripod_grid_n(const tripod_grid* grid);
TRIPOD_API double tripod_grid_extent(const tripod_grid* grid);

/* Fields. Values are interleaved (re, im) pairs in row-major order,
 * 2 * n * n doubles. */
TRIPOD_API tripod_status tripod_field_from_values(const tripod_grid* grid,
                                                  const double* values,
                                                  size_t count,
                                                  tripod_field** out);
/* charge 0 gives a Gaussian, otherwise a Laguerre-Gauss beam. */
TRIPOD_API tripod_status tripod_field_beam(const tripod_grid* grid,
                                           double amplitude, double width,
                                           int charge, tripod_field** out);
TRIPOD_API void tripod_field_destroy(tripod_field* field);
TRIPOD_API tripod_status tripod_field_values(const tripod_field* field,
                                             double* values, size_t count);
TRIPOD_API tripod_status tripod_field_norm(const tripod_field* field,
                                           double* out);
TRIPOD_API tripod_status tripod_field_rms_radius(const tripod_field* field,
                                                 double* out);
TRIPOD_API tripod_status tripod_field_vortex_charge(const tripod_field* field,
                                                    double radius, int* out);

/* Free-space propagation over [0, z_end] in n_slices steps. */
TRIPOD_API tripod_status tripod_propagate_free_space(const tripod_field* e0,
                                                     double z_end,
                                                     int n_slices,
                                                     int record_every,
                                                     tripod_slices** out);
TRIPOD_API void tripod_slices_destroy(tripod_slices* slices);
TRIPOD_API size_t tripod_slices_count(const tripod_slices* slices);
TRIPOD_API tripod_status tripod_slices_z(const tripod_slices* slices,
                                         size_t index, double* out);
/* Copy of slice `index`; the caller destroys it. */
TRIPOD_API tripod_status tripod_slices_field(const tripod_slices* slices,
                                             size_t index, tripod_field** out);

/* Loss criterion L / (v_rad gamma^-1 Omega_c^2 tau^2). */
TRIPOD_API tripod_status tripod_adiabaticity_ratio(double sample_length,
                                                   double v_rad, double gamma,
                                                   double omega_c, double tau,
                                                   double* out);

/* Run configurations (YAML text). */
TRIPOD_API tripod_status tripod_config_parse(const char* text,
                                             tripod_config** out);
TRIPOD_API tripod_status tripod_config_load(const char* path,
                                            tripod_config** out);
/* Reparse with parameters.<key> replaced by value. */
TRIPOD_API tripod_status tripod_config_with_parameter(const tripod_config* cfg,
                                                      const char* key,
                                                      double value,
                                                      tripod_config** out);
TRIPOD_API tripod_status tripod_config_set_output_dir(tripod_config* cfg,
                                                      const char* dir);
TRIPOD_API void tripod_config_destroy(tripod_config* cfg);
TRIPOD_API const char* tripod_config_name(const tripod_config* cfg);
TRIPOD_API size_t tripod_config_warning_count(const tripod_config* cfg);
TRIPOD_API const char* tripod_config_warning(const tripod_config* cfg,
                                             size_t index);

/* Executes the scenario and writes its outputs. */
TRIPOD_API tripod_status tripod_run(const tripod_config* cfg,
                                    tripod_report** out);
TRIPOD_API void tripod_report_destroy(tripod_report* report);
TRIPOD_API const char* tripod_report_json(const tripod_report* report);
TRIPOD_API int tripod_report_degraded(const tripod_report* report);
TRIPOD_API double tripod_report_rms_growth_rate(const tripod_report* report);
TRIPOD_API double tripod_report_peak_ratio(const tripod_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TRIPOD_TRIPOD_H_ */
