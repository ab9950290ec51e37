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

#include "sudas/config.hpp"
#include "sudas/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sudas
{

namespace
{
void require_nonnegative(double v, const char *name)
{
    if (!std::isfinite(v) || v < 0.0)
        throw ConfigError(std::string("scenario.") + name + ": must be finite and >= 0");
}
} // namespace

void validate(const SystemConfig &cfg)
{
    if (cfg.n_tx_bs == 0)
        throw ConfigError("scenario.n_tx_bs: must be >= 1");
    if (cfg.n_sudacs == 0)
        throw ConfigError("scenario.n_sudacs: must be >= 1");
    if (cfg.n_ues == 0)
        throw ConfigError("scenario.n_ues: must be >= 1");
    if (cfg.n_subcarriers == 0)
        throw ConfigError("scenario.n_subcarriers: must be >= 1");
    if (cfg.n_streams == 0)
        throw ConfigError("scenario.n_streams: must be >= 1");
    if (cfg.n_streams > std::min(cfg.n_tx_bs, cfg.n_sudacs))
        throw ConfigError("scenario.n_streams: rank condition violated, n_streams (" +
                          std::to_string(cfg.n_streams) + ") must be <= min(n_tx_bs, n_sudacs) = " +
                          std::to_string(std::min(cfg.n_tx_bs, cfg.n_sudacs)));

    // Zero budgets and zero gains are accepted; they describe degenerate but valid drops.
    require_nonnegative(cfg.p_bs_max, "p_bs_max");
    require_nonnegative(cfg.p_sudac_max, "p_sudac_max");
    require_nonnegative(cfg.backend_gain, "backend_gain");
    require_nonnegative(cfg.frontend_gain, "frontend_gain");
    require_nonnegative(cfg.direct_gain, "direct_gain");

    if (!std::isfinite(cfg.noise_power) || cfg.noise_power <= 0.0)
        throw ConfigError("scenario.noise_power: must be > 0");
    if (!std::isfinite(cfg.subcarrier_bandwidth_hz) || cfg.subcarrier_bandwidth_hz <= 0.0)
        throw ConfigError("scenario.subcarrier_bandwidth_hz: must be > 0");
    if (cfg.ue_weights.size() != cfg.n_ues)
        throw ConfigError("scenario.ue_weights: expected " + std::to_string(cfg.n_ues) + " entries, got " +
                          std::to_string(cfg.ue_weights.size()));
    for (double w : cfg.ue_weights)
        if (!std::isfinite(w) || w <= 0.0)
            throw ConfigError("scenario.ue_weights: all weights must be > 0");
}

void validate(const SolverParams &params)
{
    if (params.max_iterations < 1)
        throw ConfigError("solver.max_iterations: must be >= 1");
    if (params.bound_max_iterations < 1)
        throw ConfigError("solver.bound_max_iterations: must be >= 1");
    if (!(params.convergence_eps > 0.0))
        throw ConfigError("solver.convergence_eps: must be > 0");
    if (!(params.dual_search_tolerance > 0.0))
        throw ConfigError("solver.dual_search_tolerance: must be > 0");
    if (!(params.dual_bracket_max > 0.0) || !std::isfinite(params.dual_bracket_max))
        throw ConfigError("solver.dual_bracket_max: must be finite and > 0");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

} // namespace sudas
