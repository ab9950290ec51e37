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

#ifndef SUDAS_CONFIG_HPP
#define SUDAS_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sudas
{

// Scenario constants. All powers and gains are linear (watts, linear path gain).
struct SystemConfig
{
    std::size_t n_tx_bs = 4;       // BS transmit antennas
    std::size_t n_sudacs = 4;      // SUDACs, i.e. SUDAS antennas
    std::size_t n_ues = 2;         // single-antenna UEs
    std::size_t n_streams = 4;     // spatial streams per (subcarrier, UE)
    std::size_t n_subcarriers = 16;
    double p_bs_max = 39.810717055349734; // BS budget, 46 dBm
    double p_sudac_max = 0.19952623149688797; // per-SUDAC budget, 23 dBm
    std::vector<double> ue_weights = {1.0, 1.0};
    double noise_power = 1.0;
    double backend_gain = 1.0;  // mean |h|^2 of BS -> SUDAS entries
    double frontend_gain = 1.0; // mean |h|^2 of SUDAS -> UE entries
    double direct_gain = 1.0;   // mean |h|^2 of BS -> UE entries (baseline only)
    double subcarrier_bandwidth_hz = 15e3;
    std::uint64_t rng_seed = 1;

    // Total SUDAS budget M * P_max.
    double sudas_budget() const { return static_cast<double>(n_sudacs) * p_sudac_max; }
};

// Throws ConfigError naming the offending field.
void validate(const SystemConfig &cfg);

struct SolverParams
{
    std::size_t max_iterations = 20;     // L_max
    double convergence_eps = 1e-5;       // kappa, max-norm on powers and assignments
    double dual_search_tolerance = 1e-9; // relative budget mismatch accepted by the dual search
    double dual_bracket_max = 1e12;      // largest dual price tried before giving up
    std::size_t bound_max_iterations = 500; // iterations used for the relaxed upper bound
};

void validate(const SolverParams &params);

// dBm -> W and dB -> linear.
double dbm_to_watt(double dbm);
double db_to_linear(double db);
double watt_to_dbm(double watt);

} // namespace sudas

#endif
