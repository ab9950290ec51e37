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

#ifndef SUDAS_SIM_HPP
#define SUDAS_SIM_HPP

#include "sudas/allocator.hpp"
#include "sudas/channel.hpp"
#include "sudas/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sudas
{

enum class System
{
    Sudas,             // alternating optimization over the two-hop SUDAS link
    BaselineLicensed,  // single-antenna UEs on the licensed band only
    BenchmarkMimo,     // UEs with M receive antennas, no SUDAS
    RelaxedUpperBound  // converged relaxed objective (approximate SINR)
};

std::string_view to_string(System s);
std::optional<System> parse_system(std::string_view name);

enum class SweepVariable
{
    BsPower, // values in dBm
    NSudacs,
    NTxBs
};

std::string_view to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

struct SweepSpec
{
    SweepVariable variable = SweepVariable::BsPower;
    std::vector<double> values;
    std::size_t n_drops = 1;
    std::vector<System> systems = {System::Sudas, System::BaselineLicensed};
    // Resolve n_streams = min(n_tx_bs, n_sudacs) for every sweep point.
    bool auto_streams = false;
};

void validate(const SweepSpec &spec);

// Seed of drop `drop` under master seed `master`: splitmix64(master + (drop + 1) * 0x9E3779B97F4A7C15).
// Independent of the sweep value and the system, so all points share channel draws.
std::uint64_t drop_seed(std::uint64_t master, std::uint64_t drop);

// Scenario of one sweep point.
SystemConfig sweep_point(const SystemConfig &base, const SweepSpec &spec, double value);

// ---------------------------------------------------------------------------------------------
// Reference systems
// ---------------------------------------------------------------------------------------------

// Parallel scalar channels per (subcarrier, UE): gain index (i * n_ues + k) * n_modes + n.
struct ParallelChannels
{
    std::size_t n_subcarriers = 0;
    std::size_t n_ues = 0;
    std::size_t n_modes = 0;
    std::vector<double> gain;

    double g(std::size_t i, std::size_t k, std::size_t n) const { return gain[(i * n_ues + k) * n_modes + n]; }
};

struct WaterfillResult
{
    std::vector<std::size_t> chosen_ue; // per subcarrier
    std::vector<double> power;          // per (subcarrier, mode) of the chosen UE
    std::vector<double> ue_rate;        // bits per channel use
    double lambda = 0.0;
    double throughput = 0.0; // weighted, bits per channel use
};

// Weighted water-filling across subcarriers and modes under one sum-power budget, each subcarrier
// going to the UE with the largest Lagrangian value at the current water level.
WaterfillResult waterfill_select(const ParallelChannels &channels, std::span<const double> weights, double budget,
                                 const SolverParams &params);

// Licensed-band-only system: maximum-ratio transmission to single-antenna UEs over the direct
// channels, water-filling over subcarriers under the BS budget.
WaterfillResult baseline_licensed(const SystemConfig &cfg, const ChannelRealization &channel,
                                  const SolverParams &params = {});

// UEs with M antennas that see the BS -> SUDAS matrices directly: per-eigenmode water-filling.
WaterfillResult benchmark_mimo(const SystemConfig &cfg, const ChannelRealization &channel,
                               const SolverParams &params = {});

// Converged value of the relaxed objective, run for params.bound_max_iterations.
double relaxed_upper_bound(const SpatialDecomposition &decomp, const SystemConfig &cfg, const SolverParams &params);

// ---------------------------------------------------------------------------------------------
// Drops and sweeps
// ---------------------------------------------------------------------------------------------

struct DropResult
{
    double throughput = 0.0;        // weighted, bits per channel use
    double throughput_bits_s = 0.0; // scaled by the subcarrier bandwidth
    std::vector<double> ue_rate;    // bits per channel use
};

DropResult evaluate_system(System system, const SystemConfig &cfg, const ChannelRealization &channel,
                           const SolverParams &params);

// Draws one realization from `seed` and evaluates `system` on it.
DropResult run_drop(const SystemConfig &cfg, std::uint64_t seed, System system, const SolverParams &params = {});

struct SweepCell
{
    double value = 0.0;
    System system = System::Sudas;
    double mean_tp_bits_s = 0.0;
    double std_error = 0.0;
    std::size_t n_drops = 0;
    std::size_t n_failures = 0;
    std::vector<double> drop_tp_bits_s; // NaN where the drop failed
    std::vector<double> mean_ue_rate;   // bits per channel use
};

struct SweepReport
{
    SweepVariable variable = SweepVariable::BsPower;
    std::uint64_t master_seed = 0;
    std::vector<SweepCell> cells; // value-major, systems in spec order

    const SweepCell &cell(double value, System system) const;
};

SweepReport run_sweep(const SweepSpec &spec, const SystemConfig &base, const SolverParams &params);

// Relaxed objective per iteration (held at its final value after convergence, max_iterations
// entries) and the converged upper bound for one drop.
struct ConvergenceTrace
{
    std::vector<double> objective;
    double upper_bound = 0.0;
    double final_exact_throughput = 0.0;
};

ConvergenceTrace convergence_trace(const SystemConfig &cfg, const SolverParams &params, std::uint64_t seed);

} // namespace sudas

#endif
