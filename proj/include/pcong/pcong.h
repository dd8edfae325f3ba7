/*
 * Copyright 2026 The pcong Authors
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

/*
 * C interface of the pcong library.
 *
 * Every fallible call returns a pcong_status; on failure pcong_last_error()
 * describes the problem for the calling thread. Handles are opaque and owned
 * by the caller, who releases them with the matching *_free function. Handles
 * keep what they depend on alive, so they may be freed in any order.
 */

#ifndef PCONG_H
#define PCONG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PCONG_BUILDING_LIBRARY)
#define PCONG_API __declspec(dllexport)
#else
#define PCONG_API __declspec(dllimport)
#endif
#else
#define PCONG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcong_status {
  PCONG_OK = 0,
  PCONG_ERR_INVALID_ARGUMENT = 1,
  PCONG_ERR_SCHEMA = 2,
  PCONG_ERR_NONCONVERGENCE = 3,
  PCONG_ERR_CONFIG = 4,
  PCONG_ERR_IO = 5,
  PCONG_ERR_INTERNAL = 6
} pcong_status;

typedef struct pcong_scenario pcong_scenario;
typedef struct pcong_decision pcong_decision;
typedef struct pcong_model pcong_model;
typedef struct pcong_particles pcong_particles;
typedef struct pcong_monitor pcong_monitor;

PCONG_API const char* pcong_version(void);

/* Message of the last failed call on this thread; "" after a success. */
PCONG_API const char* pcong_last_error(void);

/* Field path of the last schema error on this thread, e.g. "sectors[0].capacity". */
PCONG_API const char* pcong_last_error_path(void);

PCONG_API void pcong_string_free(char* s);

/* ------------------------------------------------------------------------ */
/* Scenarios */

typedef enum pcong_intent_family {
  PCONG_INTENT_TRIANGULAR = 0,
  PCONG_INTENT_PERT = 1
} pcong_intent_family;

typedef struct pcong_corridor_params {
  size_t n_sectors;
  double crossing;
  double takeoff_earliest;
  double takeoff_latest;
  double scheduled_arrival;
  pcong_intent_family family;
  double support_width;
  double lambda;
  size_t capacity;
  /* Nonzero replaces the departure-delay inbound law by a point mass at 0. */
  int deterministic_inbound;
} pcong_corridor_params;

typedef struct pcong_grid_params {
  size_t rows;
  size_t cols;
  size_t n_flights;
  double horizon;
  double crossing;
  pcong_intent_family family;
  double support_width;
  double lambda;
  double inbound_half_width;
  double takeoff_half_width;
  double base_capacity;
  double ring_step;
} pcong_grid_params;

PCONG_API void pcong_corridor_params_default(pcong_corridor_params* params);
PCONG_API void pcong_grid_params_default(pcong_grid_params* params);

PCONG_API pcong_status pcong_scenario_load(const char* path, pcong_scenario** out);
PCONG_API pcong_status pcong_scenario_from_json(const char* json, pcong_scenario** out);
PCONG_API pcong_status pcong_scenario_corridor(const pcong_corridor_params* params,
                                               pcong_scenario** out);
PCONG_API pcong_status pcong_scenario_grid(const pcong_grid_params* params, pcong_scenario** out);
PCONG_API void pcong_scenario_free(pcong_scenario* scenario);

/* JSON text; release with pcong_string_free. */
PCONG_API pcong_status pcong_scenario_to_json(const pcong_scenario* scenario, char** out);
PCONG_API pcong_status pcong_scenario_save(const pcong_scenario* scenario, const char* path);

PCONG_API size_t pcong_scenario_flight_count(const pcong_scenario* scenario);
PCONG_API size_t pcong_scenario_sector_count(const pcong_scenario* scenario);
/* Returned strings live as long as the scenario. */
PCONG_API pcong_status pcong_scenario_flight_id(const pcong_scenario* scenario, size_t flight,
                                                const char** out);
PCONG_API pcong_status pcong_scenario_sector_id(const pcong_scenario* scenario, size_t sector,
                                                const char** out);
PCONG_API pcong_status pcong_scenario_sector_capacity(const pcong_scenario* scenario,
                                                      size_t sector, size_t* out);
/* Number of flights crossing the sector. */
PCONG_API pcong_status pcong_scenario_sector_visits(const pcong_scenario* scenario, size_t sector,
                                                    size_t* out);
PCONG_API pcong_status pcong_scenario_flight_arrival(const pcong_scenario* scenario, size_t flight,
                                                     double* out);

/* ------------------------------------------------------------------------ */
/* Decision vectors */

PCONG_API pcong_status pcong_decision_nominal(const pcong_scenario* scenario,
                                              pcong_decision** out);
/* Uniform draw over the feasible set, a pure function of (seed, index). */
PCONG_API pcong_status pcong_decision_sample(const pcong_scenario* scenario, uint64_t seed,
                                             uint64_t index, pcong_decision** out);
PCONG_API pcong_status pcong_decision_from_json(const pcong_scenario* scenario, const char* json,
                                                pcong_decision** out);
PCONG_API pcong_status pcong_decision_load(const pcong_scenario* scenario, const char* path,
                                           pcong_decision** out);
PCONG_API pcong_status pcong_decision_to_json(const pcong_decision* decision, char** out);
/* Targets of one flight; the pointer lives as long as the decision. */
PCONG_API pcong_status pcong_decision_targets(const pcong_decision* decision, size_t flight,
                                              const double** targets, size_t* count);
PCONG_API void pcong_decision_free(pcong_decision* decision);

/* ------------------------------------------------------------------------ */
/* Quadrature backend */

typedef struct pcong_quad_spec {
  double rel_tol;
  double abs_tol;
  /* Nonzero multiplies abs_tol by the interval length. */
  int abs_tol_scaled;
  int max_subdivisions;
} pcong_quad_spec;

typedef struct pcong_quad_result {
  double value;
  double error_estimate;
  uint64_t evaluations;
  int converged;
} pcong_quad_result;

PCONG_API void pcong_quad_spec_default(pcong_quad_spec* spec);

/* Propagates every flight's marginals on a grid of spacing `step` seconds.
 * threads == 0 uses the hardware concurrency. */
PCONG_API pcong_status pcong_model_build(const pcong_decision* decision, double step,
                                         unsigned threads, pcong_model** out);
PCONG_API void pcong_model_free(pcong_model* model);

/* spec may be NULL for the defaults. */
PCONG_API pcong_status pcong_model_delay_cost(const pcong_model* model, size_t flight,
                                              const pcong_quad_spec* spec,
                                              pcong_quad_result* out);
PCONG_API pcong_status pcong_model_congestion_cost(const pcong_model* model, size_t sector,
                                                   const pcong_quad_spec* spec,
                                                   pcong_quad_result* out);
/* Mean of the marginal of one flight-plan point. */
PCONG_API pcong_status pcong_model_point_mean(const pcong_model* model, size_t flight,
                                              size_t point, double* out);
/* Occupancy pmf at time t. Writes min(capacity, len) entries; *len receives the full size. */
PCONG_API pcong_status pcong_model_occupancy(const pcong_model* model, size_t sector, double t,
                                             double* pmf, size_t capacity, size_t* len);
PCONG_API pcong_status pcong_model_overload_probability(const pcong_model* model, size_t sector,
                                                        double t, double* out);

/* ------------------------------------------------------------------------ */
/* Monte-Carlo backend */

typedef enum pcong_stop_reason {
  PCONG_STOP_RELATIVE = 0,
  PCONG_STOP_ABSOLUTE = 1,
  PCONG_STOP_MAX_SAMPLES = 2
} pcong_stop_reason;

typedef struct pcong_stopping_rule {
  double eps_rel;
  double eps_abs;
  uint64_t n_init;
  uint64_t n_max;
  /* Nonzero selects the literal loop condition
   * (continue while SEM > eps_rel * mean and SEM < eps_abs). */
  int literal;
} pcong_stopping_rule;

typedef struct pcong_mc_estimate {
  double mean;
  double sem;
  uint64_t n;
  pcong_stop_reason reason;
} pcong_mc_estimate;

typedef struct pcong_trace_point {
  uint64_t n;
  double mean;
  double sem;
} pcong_trace_point;

PCONG_API void pcong_stopping_rule_default(pcong_stopping_rule* rule);

/* Memoized trajectories keyed by (seed, particle, flight).
 * memory_budget == 0 selects the default of 256 MiB. */
PCONG_API pcong_status pcong_particles_create(const pcong_decision* decision, uint64_t seed,
                                              size_t memory_budget, pcong_particles** out);
PCONG_API void pcong_particles_free(pcong_particles* particles);

/* rule may be NULL for the defaults. */
PCONG_API pcong_status pcong_mc_delay_cost(const pcong_particles* particles, size_t flight,
                                           const pcong_stopping_rule* rule, unsigned threads,
                                           pcong_mc_estimate* out);
PCONG_API pcong_status pcong_mc_congestion_cost(const pcong_particles* particles, size_t sector,
                                                const pcong_stopping_rule* rule, unsigned threads,
                                                pcong_mc_estimate* out);

typedef enum pcong_target {
  PCONG_TARGET_DELAY = 0,
  PCONG_TARGET_CONGESTION = 1
} pcong_target;

/* Draws exactly n particles and records the accumulator at n = 2, 4, 8, ...
 * `entity` is a flight (delay) or sector (congestion) index. Writes
 * min(capacity, count) points; *count receives the full number. */
PCONG_API pcong_status pcong_mc_trace(const pcong_particles* particles, pcong_target target,
                                      size_t entity, uint64_t n, unsigned threads,
                                      pcong_trace_point* points, size_t capacity, size_t* count);

/* ------------------------------------------------------------------------ */
/* Congestion monitoring */

typedef struct pcong_monitor_options {
  double merge_eps;
  double eps_rel;
  uint64_t n_init;
  uint64_t n_max;
} pcong_monitor_options;

typedef struct pcong_monitor_point {
  double time;
  double probability;
  double sem;
  uint64_t count;
} pcong_monitor_point;

PCONG_API void pcong_monitor_options_default(pcong_monitor_options* options);

/* Monitors one sector, or every sector when sector == SIZE_MAX. probes may be
 * NULL. options may be NULL for the defaults. */
PCONG_API pcong_status pcong_monitor_run(const pcong_particles* particles,
                                         const pcong_monitor_options* options, size_t sector,
                                         const double* probes, size_t n_probes, unsigned threads,
                                         pcong_monitor** out);
PCONG_API void pcong_monitor_free(pcong_monitor* monitor);

/* Keys of a monitored sector in ascending time; the pointer lives as long as the monitor. */
PCONG_API pcong_status pcong_monitor_points(const pcong_monitor* monitor, size_t sector,
                                            const pcong_monitor_point** points, size_t* count);
PCONG_API pcong_status pcong_monitor_info(const pcong_monitor* monitor, size_t sector,
                                          uint64_t* particles, int* converged);
/* Estimate holding at time t (last key at or before t). */
PCONG_API pcong_status pcong_monitor_probability_at(const pcong_monitor* monitor, size_t sector,
                                                    double t, double* probability, double* sem);

/* ------------------------------------------------------------------------ */
/* Building blocks */

/* Poisson-Binomial pmf of n probabilities into pmf[0..n]. */
PCONG_API pcong_status pcong_pb_pmf_dft(const double* probs, size_t n, double* pmf);
PCONG_API pcong_status pcong_pb_pmf_dp(const double* probs, size_t n, double* pmf);

/* Congestion cost of n intervals [lo[i], hi[i]] against a capacity. */
PCONG_API pcong_status pcong_sweep_cost(const double* lo, const double* hi, size_t n,
                                        size_t capacity, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PCONG_H */
