/* SPDX-License-Identifier: Apache-2.0
 *
 * sudas: resource allocation for SUDAS-assisted multicarrier downlink
 * Copyright (C) 2026 The sudas authors
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
 *
 * C interface of libsudas. Handles are opaque and owned by the caller; every
 * function returns a status code and, on failure, leaves a message retrievable
 * with sudas_last_error() on the calling thread.
 */

#ifndef SUDAS_H
#define SUDAS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SUDAS_API __declspec(dllexport)
#else
#define SUDAS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sudas_status
{
    SUDAS_OK = 0,
    SUDAS_ERR_CONFIG = 1,
    SUDAS_ERR_DOMAIN = 2,
    SUDAS_ERR_RANK = 3,
    SUDAS_ERR_NUMERICAL = 4,
    SUDAS_ERR_SOLVER = 5,
    SUDAS_ERR_IO = 6,
    SUDAS_ERR_INVALID_ARGUMENT = 7,
    SUDAS_ERR_INTERNAL = 8
} sudas_status;

/* Scenario, solver and sweep settings loaded from a configuration file. */
typedef struct sudas_scenario sudas_scenario;

/* Result of one allocation solve. */
typedef struct sudas_solution sudas_solution;

SUDAS_API const char *sudas_version(void);

/* Message of the last failed call on this thread ("" if none). */
SUDAS_API const char *sudas_last_error(void);

SUDAS_API const char *sudas_status_name(sudas_status status);

/* Loads `path` and applies `n_overrides` "key=value" strings on top of it. */
SUDAS_API sudas_status sudas_scenario_load(const char *path, const char *const *overrides, size_t n_overrides,
                                           sudas_scenario **out);

/* Parses configuration text instead of a file. */
SUDAS_API sudas_status sudas_scenario_parse(const char *text, const char *const *overrides, size_t n_overrides,
                                            sudas_scenario **out);

SUDAS_API void sudas_scenario_free(sudas_scenario *scenario);

/* Serialized linear-unit configuration. Writes up to `cap` bytes (NUL-terminated when cap > 0) and
 * returns the full length excluding the terminator. */
SUDAS_API size_t sudas_scenario_serialize(const sudas_scenario *scenario, char *buf, size_t cap);

SUDAS_API sudas_status sudas_scenario_seed(const sudas_scenario *scenario, uint64_t *seed);

/* Commands writing CSV files into `out_dir` (created if missing). */
SUDAS_API sudas_status sudas_run_solve(const sudas_scenario *scenario, const char *out_dir);
SUDAS_API sudas_status sudas_run_sweep(const sudas_scenario *scenario, const char *out_dir);
SUDAS_API sudas_status sudas_run_trace(const sudas_scenario *scenario, const char *out_dir);

/* One drop with the scenario seed, kept in memory. */
SUDAS_API sudas_status sudas_solve(const sudas_scenario *scenario, sudas_solution **out);
SUDAS_API void sudas_solution_free(sudas_solution *solution);

/* Weighted throughput with exact SINR in bits per channel use and in bits/s. */
SUDAS_API sudas_status sudas_solution_throughput(const sudas_solution *solution, double *bits_per_use,
                                                 double *bits_per_s);
SUDAS_API sudas_status sudas_solution_iterations(const sudas_solution *solution, size_t *iterations,
                                                 int *converged);
/* Copies up to `cap` trace values into `buf`; returns the trace length. */
SUDAS_API size_t sudas_solution_trace(const sudas_solution *solution, double *buf, size_t cap);
/* Selected UE of subcarrier `subcarrier`. */
SUDAS_API sudas_status sudas_solution_assignment(const sudas_solution *solution, size_t subcarrier, size_t *ue);
/* Used power and budget of the BS (hop 0) or the SUDAS (hop 1). */
SUDAS_API sudas_status sudas_solution_power(const sudas_solution *solution, int hop, double *used, double *budget);

#ifdef __cplusplus
}
#endif

#endif
