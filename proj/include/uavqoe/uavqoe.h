/* Copyright 2026 The uavqoe Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the uavqoe simulation library.
 *
 * Every function returns a uavqoe_status. On failure the message of the
 * last error on the calling thread is available from uavqoe_last_error().
 * Objects are opaque and owned by the caller once created; release them with
 * the matching *_free function. Passing NULL to a *_free function is a no-op.
 */

#ifndef UAVQOE_UAVQOE_H_
#define UAVQOE_UAVQOE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(UAVQOE_BUILDING_LIBRARY)
#define UAVQOE_API __attribute__((visibility("default")))
#else
#define UAVQOE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavqoe_status {
  UAVQOE_OK = 0,
  /* Bad input: schema, argument or precondition violation. */
  UAVQOE_VALIDATION_ERROR = 1,
  /* The request was valid but could not be carried out (I/O and the like). */
  UAVQOE_RUNTIME_ERROR = 2,
} uavqoe_status;

typedef enum uavqoe_mode {
  UAVQOE_MODE_CLUSTER = 0,
  UAVQOE_MODE_DEPLOY = 1,
  UAVQOE_MODE_MOVE = 2,
} uavqoe_mode;

typedef struct uavqoe_scenario uavqoe_scenario;
typedef struct uavqoe_experiment uavqoe_experiment;
typedef struct uavqoe_report uavqoe_report;

UAVQOE_API const char* uavqoe_version(void);

/* Message of the last failed call on this thread; empty when none. */
UAVQOE_API const char* uavqoe_last_error(void);

/* ---- scenarios ---- */

UAVQOE_API uavqoe_status uavqoe_scenario_load(const char* path, uavqoe_scenario** out);
UAVQOE_API uavqoe_status uavqoe_scenario_parse(const char* json, uavqoe_scenario** out);

/* Uniform users over an x_max_m by y_max_m floor, defaults elsewhere. */
UAVQOE_API uavqoe_status uavqoe_scenario_generate(int users, int uavs, double x_max_m,
                                                  double y_max_m, uint64_t seed,
                                                  uavqoe_scenario** out);

/* Writes canonical JSON; the file parses back to the same scenario. */
UAVQOE_API uavqoe_status uavqoe_scenario_save(const uavqoe_scenario* scenario, const char* path);

/* Canonical JSON into buf. *needed receives the size including the
 * terminating NUL; pass buf = NULL to query it. */
UAVQOE_API uavqoe_status uavqoe_scenario_to_json(const uavqoe_scenario* scenario, char* buf,
                                                 size_t size, size_t* needed);

UAVQOE_API uavqoe_status uavqoe_scenario_user_count(const uavqoe_scenario* scenario, size_t* out);
UAVQOE_API uavqoe_status uavqoe_scenario_uav_count(const uavqoe_scenario* scenario, int* out);

UAVQOE_API void uavqoe_scenario_free(uavqoe_scenario* scenario);

/* ---- experiments ---- */

UAVQOE_API uavqoe_status uavqoe_experiment_create(uavqoe_mode mode, const char* output_dir,
                                                  uavqoe_experiment** out);
UAVQOE_API uavqoe_status uavqoe_experiment_set_id(uavqoe_experiment* exp, const char* id);

/* Comma-separated: qlearning, kmeans, igk, exhaustive, random, all. */
UAVQOE_API uavqoe_status uavqoe_experiment_set_algorithms(uavqoe_experiment* exp, const char* list);

/* Axis: power_dbm, users, clusters or episodes; "none" clears the sweep. */
UAVQOE_API uavqoe_status uavqoe_experiment_set_sweep(uavqoe_experiment* exp, const char* axis,
                                                     const double* values, size_t count);
UAVQOE_API uavqoe_status uavqoe_experiment_set_seeds(uavqoe_experiment* exp, const uint64_t* seeds,
                                                     size_t count);
UAVQOE_API uavqoe_status uavqoe_experiment_set_jobs(uavqoe_experiment* exp, int jobs);
UAVQOE_API uavqoe_status uavqoe_experiment_set_timing(uavqoe_experiment* exp, int enabled);
UAVQOE_API uavqoe_status uavqoe_experiment_set_episodes(uavqoe_experiment* exp, int episodes);
UAVQOE_API uavqoe_status uavqoe_experiment_set_epsilon(uavqoe_experiment* exp, double epsilon);
UAVQOE_API uavqoe_status uavqoe_experiment_set_qtable_export(uavqoe_experiment* exp, const char* dir);
UAVQOE_API uavqoe_status uavqoe_experiment_set_qtable_import(uavqoe_experiment* exp, const char* dir);

/* Runs the experiment and writes its CSV files. *out may be NULL when the
 * caller does not need the in-memory report. */
UAVQOE_API uavqoe_status uavqoe_experiment_run(const uavqoe_experiment* exp,
                                               const uavqoe_scenario* scenario,
                                               uavqoe_report** out);

UAVQOE_API void uavqoe_experiment_free(uavqoe_experiment* exp);

/* ---- reports ---- */

UAVQOE_API size_t uavqoe_report_row_count(const uavqoe_report* report);
UAVQOE_API size_t uavqoe_report_warning_count(const uavqoe_report* report);
/* Row accessors return NULL / NaN / 0 for an out-of-range row. */
UAVQOE_API const char* uavqoe_report_algorithm(const uavqoe_report* report, size_t row);
UAVQOE_API uint64_t uavqoe_report_seed(const uavqoe_report* report, size_t row);
UAVQOE_API double uavqoe_report_sweep_value(const uavqoe_report* report, size_t row);
UAVQOE_API double uavqoe_report_total_mos(const uavqoe_report* report, size_t row);
UAVQOE_API double uavqoe_report_sum_rate(const uavqoe_report* report, size_t row);
/* -1 for rows that are not movement traces. */
UAVQOE_API int uavqoe_report_slots_at_least_static(const uavqoe_report* report, size_t row);

UAVQOE_API void uavqoe_report_free(uavqoe_report* report);

#ifdef __cplusplus
}
#endif

#endif /* UAVQOE_UAVQOE_H_ */
