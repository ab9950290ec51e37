// SPDX-License-Identifier: Apache-2.0
//
// sudas: resource allocation for SUDAS-assisted multicarrier downlink
// Copyright (C) 2026 The sudas authors
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

#include "sudas/sudas.h"

#include "sudas/allocator.hpp"
#include "sudas/error.hpp"
#include "sudas/scenario_io.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

struct sudas_scenario
{
    sudas::Scenario scenario;
};

struct sudas_solution
{
    sudas::SystemConfig config;
    sudas::AllocationResult result;
    sudas::ThroughputReport throughput;
    sudas::ConstraintReport constraints;
};

namespace
{

thread_local std::string g_last_error;

sudas_status to_status(sudas::ErrorCode code)
{
    switch (code)
    {
    case sudas::ErrorCode::Config:
        return SUDAS_ERR_CONFIG;
    case sudas::ErrorCode::Domain:
        return SUDAS_ERR_DOMAIN;
    case sudas::ErrorCode::Rank:
        return SUDAS_ERR_RANK;
    case sudas::ErrorCode::Numerical:
        return SUDAS_ERR_NUMERICAL;
    case sudas::ErrorCode::Solver:
        return SUDAS_ERR_SOLVER;
    case sudas::ErrorCode::Io:
        return SUDAS_ERR_IO;
    }
    return SUDAS_ERR_INTERNAL;
}

sudas_status fail(sudas_status status, std::string message)
{
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn> sudas_status guarded(Fn &&fn)
{
    try
    {
        g_last_error.clear();
        fn();
        return SUDAS_OK;
    }
    catch (const sudas::Error &e)
    {
        return fail(to_status(e.code()), e.what());
    }
    catch (const std::exception &e)
    {
        return fail(SUDAS_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(SUDAS_ERR_INTERNAL, "unknown error");
    }
}

std::vector<std::string> collect(const char *const *overrides, size_t n)
{
    std::vector<std::string> out;
    out.reserve(n);
    for (size_t j = 0; j < n; ++j)
    {
        if (!overrides[j])
            throw sudas::ConfigError("override " + std::to_string(j) + " is null");
        out.emplace_back(overrides[j]);
    }
    return out;
}

} // namespace

extern "C" {

const char *sudas_version(void) { return "1.0.0"; }

const char *sudas_last_error(void) { return g_last_error.c_str(); }

const char *sudas_status_name(sudas_status status)
{
    switch (status)
    {
    case SUDAS_OK:
        return "ok";
    case SUDAS_ERR_CONFIG:
        return "configuration error";
    case SUDAS_ERR_DOMAIN:
        return "domain error";
    case SUDAS_ERR_RANK:
        return "rank error";
    case SUDAS_ERR_NUMERICAL:
        return "numerical error";
    case SUDAS_ERR_SOLVER:
        return "solver error";
    case SUDAS_ERR_IO:
        return "I/O error";
    case SUDAS_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case SUDAS_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

sudas_status sudas_scenario_load(const char *path, const char *const *overrides, size_t n_overrides,
                                 sudas_scenario **out)
{
    if (!path || !out || (n_overrides && !overrides))
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_scenario_load: null argument");
    *out = nullptr;
    return guarded([&] {
        const auto ov = collect(overrides, n_overrides);
        *out = new sudas_scenario{sudas::load_config(path, ov)};
    });
}

sudas_status sudas_scenario_parse(const char *text, const char *const *overrides, size_t n_overrides,
                                  sudas_scenario **out)
{
    if (!text || !out || (n_overrides && !overrides))
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_scenario_parse: null argument");
    *out = nullptr;
    return guarded([&] {
        const auto ov = collect(overrides, n_overrides);
        *out = new sudas_scenario{sudas::parse_config(text, ov)};
    });
}

void sudas_scenario_free(sudas_scenario *scenario) { delete scenario; }

size_t sudas_scenario_serialize(const sudas_scenario *scenario, char *buf, size_t cap)
{
    if (!scenario)
        return 0;
    const std::string text = sudas::serialize_config(scenario->scenario);
    if (buf && cap > 0)
    {
        const size_t n = std::min(cap - 1, text.size());
        std::memcpy(buf, text.data(), n);
        buf[n] = '\0';
    }
    return text.size();
}

sudas_status sudas_scenario_seed(const sudas_scenario *scenario, uint64_t *seed)
{
    if (!scenario || !seed)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_scenario_seed: null argument");
    *seed = scenario->scenario.system.rng_seed;
    return SUDAS_OK;
}

sudas_status sudas_run_solve(const sudas_scenario *scenario, const char *out_dir)
{
    if (!scenario || !out_dir)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_run_solve: null argument");
    return guarded([&] { sudas::cmd_solve(scenario->scenario, out_dir); });
}

sudas_status sudas_run_sweep(const sudas_scenario *scenario, const char *out_dir)
{
    if (!scenario || !out_dir)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_run_sweep: null argument");
    return guarded([&] { sudas::cmd_sweep(scenario->scenario, out_dir); });
}

sudas_status sudas_run_trace(const sudas_scenario *scenario, const char *out_dir)
{
    if (!scenario || !out_dir)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_run_trace: null argument");
    return guarded([&] { sudas::cmd_trace(scenario->scenario, out_dir); });
}

sudas_status sudas_solve(const sudas_scenario *scenario, sudas_solution **out)
{
    if (!scenario || !out)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_solve: null argument");
    *out = nullptr;
    return guarded([&] {
        const sudas::Scenario &sc = scenario->scenario;
        const auto channel = sudas::generate_channels(sc.system, sc.system.rng_seed);
        const auto decomp = sudas::decompose(channel);
        auto sol = std::make_unique<sudas_solution>();
        sol->config = sc.system;
        sol->result = sudas::alternating_optimize(decomp, sc.system, sc.solver);
        sol->throughput = sudas::weighted_throughput(sol->result.policy, decomp, sc.system);
        sol->constraints = sudas::check_constraints(sol->result.policy, sc.system);
        *out = sol.release();
    });
}

void sudas_solution_free(sudas_solution *solution) { delete solution; }

sudas_status sudas_solution_throughput(const sudas_solution *solution, double *bits_per_use, double *bits_per_s)
{
    if (!solution)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_solution_throughput: null solution");
    if (bits_per_use)
        *bits_per_use = solution->throughput.throughput;
    if (bits_per_s)
        *bits_per_s = solution->throughput.throughput_bits_s;
    return SUDAS_OK;
}

sudas_status sudas_solution_iterations(const sudas_solution *solution, size_t *iterations, int *converged)
{
    if (!solution)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_solution_iterations: null solution");
    if (iterations)
        *iterations = solution->result.iterations;
    if (converged)
        *converged = solution->result.converged ? 1 : 0;
    return SUDAS_OK;
}

size_t sudas_solution_trace(const sudas_solution *solution, double *buf, size_t cap)
{
    if (!solution)
        return 0;
    const auto &trace = solution->result.trace;
    if (buf)
        for (size_t j = 0; j < std::min(cap, trace.size()); ++j)
            buf[j] = trace[j];
    return trace.size();
}

sudas_status sudas_solution_assignment(const sudas_solution *solution, size_t subcarrier, size_t *ue)
{
    if (!solution || !ue)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_solution_assignment: null argument");
    const auto &p = solution->result.policy;
    if (subcarrier >= p.n_subcarriers)
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_solution_assignment: subcarrier out of range");
    for (size_t k = 0; k < p.n_ues; ++k)
        if (p.s(subcarrier, k) == 1.0)
        {
            *ue = k;
            return SUDAS_OK;
        }
    return fail(SUDAS_ERR_INTERNAL, "sudas_solution_assignment: subcarrier is unassigned");
}

sudas_status sudas_solution_power(const sudas_solution *solution, int hop, double *used, double *budget)
{
    if (!solution || (hop != 0 && hop != 1))
        return fail(SUDAS_ERR_INVALID_ARGUMENT, "sudas_solution_power: bad solution or hop");
    const auto &c = solution->constraints;
    if (used)
        *used = hop == 0 ? c.bs_power_used : c.sudas_power_used;
    if (budget)
        *budget = hop == 0 ? solution->config.p_bs_max : solution->config.sudas_budget();
    return SUDAS_OK;
}

} // extern "C"
