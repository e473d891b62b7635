/* Copyright 2026 The optra Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the optra simulator. Every object is an opaque handle owned
 * by the caller and released with the matching *_free function. Functions
 * return an optra_status; on failure optra_last_error() describes the error
 * of the calling thread.
 */

#ifndef OPTRA_OPTRA_H
#define OPTRA_OPTRA_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(OPTRA_BUILDING_LIBRARY)
#define OPTRA_API __declspec(dllexport)
#else
#define OPTRA_API __declspec(dllimport)
#endif
#else
#define OPTRA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum optra_status {
  OPTRA_OK = 0,
  OPTRA_ERR_INVALID_MATRIX = 1,
  OPTRA_ERR_SHAPE = 2,
  OPTRA_ERR_INVALID_SIZE = 3,
  OPTRA_ERR_DISCONNECTED_GRAPH = 4,
  OPTRA_ERR_INVALID_EIGENGAP = 5,
  OPTRA_ERR_INDEX = 6,
  OPTRA_ERR_INVALID_PARAMETER = 7,
  OPTRA_ERR_DIMENSION_TOO_SMALL = 8,
  OPTRA_ERR_REFERENCE_SOLVE_FAILED = 9,
  OPTRA_ERR_PARSE = 10,
  OPTRA_ERR_LABEL = 11,
  OPTRA_ERR_STEP_SIZE_INFEASIBLE = 12,
  OPTRA_ERR_SCHEDULE_EXHAUSTED = 13,
  OPTRA_ERR_CONFIG = 14,
  OPTRA_ERR_BUDGET_TOO_SMALL = 15,
  OPTRA_ERR_IO = 16,
  OPTRA_ERR_NULL_ARGUMENT = 100,
  OPTRA_ERR_INTERNAL = 101
} optra_status;

typedef struct optra_config optra_config;
typedef struct optra_trace optra_trace;

typedef struct optra_record {
  long long k;
  long long grad_evals;
  long long comm_rounds;
  double sim_time;
  double bregman;
  double fem;
  double consensus_err;
  double certified_ub;    /* valid when has_certified_ub != 0 */
  double lower_bound_ref; /* valid when has_lower_bound_ref != 0 */
  int has_certified_ub;
  int has_lower_bound_ref;
} optra_record;

typedef struct optra_spectrum {
  size_t nodes;
  size_t edges;
  double lambda2;
  double lambda_max;
  double eta;
  int chebyshev_rounds; /* ceil(1 / sqrt(eta)) */
} optra_spectrum;

OPTRA_API const char* optra_version(void);
/* Message of the last failed call on this thread ("" if none). */
OPTRA_API const char* optra_last_error(void);
OPTRA_API const char* optra_status_name(optra_status status);
/* Releases strings returned through char** out-parameters. */
OPTRA_API void optra_string_free(char* s);

/* ---- configuration -------------------------------------------------- */
OPTRA_API optra_status optra_config_from_json(const char* json, optra_config** out);
/* Like optra_config_from_json, resolving relative paths against base_dir. */
OPTRA_API optra_status optra_config_from_json_in(const char* json, const char* base_dir,
                                                 optra_config** out);
/* Relative paths in the file are resolved against its directory. */
OPTRA_API optra_status optra_config_from_file(const char* path, optra_config** out);
/* Applies a JSON merge patch; the handle is unchanged on failure. */
OPTRA_API optra_status optra_config_merge_json(optra_config* config, const char* patch);
/* Builds graph, objective and algorithm and checks step-size feasibility. */
OPTRA_API optra_status optra_config_validate(const optra_config* config);
OPTRA_API optra_status optra_config_to_json(const optra_config* config, char** out);
OPTRA_API void optra_config_free(optra_config* config);

/* ---- runs ------------------------------------------------------------ */
OPTRA_API optra_status optra_run(const optra_config* config, optra_trace** out);
OPTRA_API size_t optra_trace_record_count(const optra_trace* trace);
OPTRA_API optra_status optra_trace_get_record(const optra_trace* trace, size_t index,
                                              optra_record* out);
OPTRA_API optra_status optra_trace_write_csv(const optra_trace* trace, const char* path);
OPTRA_API optra_status optra_trace_write_metadata(const optra_trace* trace, const char* path);
OPTRA_API void optra_trace_free(optra_trace* trace);

/* Runs n configurations on up to `jobs` threads. traces_out[i] is NULL and
 * statuses_out[i] != OPTRA_OK for failed runs; messages_out (optional)
 * receives one message per run, released with optra_string_free. */
OPTRA_API optra_status optra_sweep(const optra_config* const* configs, size_t n, unsigned jobs,
                                   optra_trace** traces_out, optra_status* statuses_out,
                                   char** messages_out);

/* Ranks traces by the Bregman distance of their last record within the
 * budget (ties by FEM). order_out[r] is the input index ranked r;
 * selected_out[r] (optional) the matching record. */
OPTRA_API optra_status optra_compare_at_budget(const optra_trace* const* traces, size_t n,
                                               double budget, size_t* order_out,
                                               optra_record* selected_out);

/* Gnuplot script plotting the given CSV traces in three panels. */
OPTRA_API optra_status optra_write_plot_script(const char* path, const char* const* csv_paths,
                                               const char* const* labels, size_t n,
                                               const char* image);

/* ---- graphs and instances -------------------------------------------- */
/* nodes == 0 infers the node count from the largest index. */
OPTRA_API optra_status optra_spectrum_from_edge_list(const char* path, size_t nodes,
                                                     optra_spectrum* out);
/* kind is "two-agent" or "line"; writes <out_dir>/instance.json with the
 * per-agent quadratics and the closed-form reference solution. */
OPTRA_API optra_status optra_hard_instance_write(const char* kind, int k, size_t d, size_t m,
                                                 double lf, double zeta, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* OPTRA_OPTRA_H */
