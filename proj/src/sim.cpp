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

#include "sudas/sim.hpp"
#include "sudas/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sudas
{

std::string_view to_string(System s)
{
    switch (s)
    {
    case System::Sudas:
        return "sudas";
    case System::BaselineLicensed:
        return "baseline_licensed";
    case System::BenchmarkMimo:
        return "benchmark_mimo";
    case System::RelaxedUpperBound:
        return "relaxed_upper_bound";
    }
    return "unknown";
}

std::optional<System> parse_system(std::string_view name)
{
    for (System s : {System::Sudas, System::BaselineLicensed, System::BenchmarkMimo, System::RelaxedUpperBound})
        if (to_string(s) == name)
            return s;
    return std::nullopt;
}

std::string_view to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::BsPower:
        return "bs_power";
    case SweepVariable::NSudacs:
        return "n_sudacs";
    case SweepVariable::NTxBs:
        return "n_tx_bs";
    }
    return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name)
{
    for (SweepVariable v : {SweepVariable::BsPower, SweepVariable::NSudacs, SweepVariable::NTxBs})
        if (to_string(v) == name)
            return v;
    return std::nullopt;
}

void validate(const SweepSpec &spec)
{
    if (spec.n_drops < 1)
        throw ConfigError("sweep.n_drops: must be >= 1");
    if (spec.values.empty())
        throw ConfigError("sweep.values: must not be empty");
    if (!std::is_sorted(spec.values.begin(), spec.values.end()))
        throw ConfigError("sweep.values: must be sorted ascending");
    if (spec.systems.empty())
        throw ConfigError("sweep.systems: must not be empty");
    for (double v : spec.values)
    {
        if (!std::isfinite(v))
            throw ConfigError("sweep.values: must be finite");
        if (spec.variable != SweepVariable::BsPower && (v < 1.0 || v != std::floor(v)))
            throw ConfigError("sweep.values: antenna counts must be positive integers");
    }
}

std::uint64_t drop_seed(std::uint64_t master, std::uint64_t drop)
{
    std::uint64_t z = master + (drop + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SystemConfig sweep_point(const SystemConfig &base, const SweepSpec &spec, double value)
{
    SystemConfig cfg = base;
    switch (spec.variable)
    {
    case SweepVariable::BsPower:
        cfg.p_bs_max = dbm_to_watt(value);
        break;
    case SweepVariable::NSudacs:
        cfg.n_sudacs = static_cast<std::size_t>(value);
        break;
    case SweepVariable::NTxBs:
        cfg.n_tx_bs = static_cast<std::size_t>(value);
        break;
    }
    if (spec.auto_streams)
        cfg.n_streams = std::min(cfg.n_tx_bs, cfg.n_sudacs);
    validate(cfg);
    return cfg;
}

WaterfillResult waterfill_select(const ParallelChannels &channels, std::span<const double> weights, double budget,
                                 const SolverParams &params)
{
    const std::size_t nf = channels.n_subcarriers;
    const std::size_t nk = channels.n_ues;
    const std::size_t nm = channels.n_modes;
    if (weights.size() != nk)
        throw ConfigError("waterfill_select: weights size does not match the number of UEs");

    WaterfillResult out;
    out.chosen_ue.assign(nf, 0);
    out.power.assign(nf * nm, 0.0);

    // Water level per UE is w_k / (lambda ln2); each subcarrier keeps the UE with the best
    // Lagrangian value sum_n w log2(1 + g p) - lambda p.
    std::vector<double> trial(nf * nm);
    std::vector<std::size_t> chosen(nf);
    auto fill = [&](double lambda) {
        double used = 0.0;
        for (std::size_t i = 0; i < nf; ++i)
        {
            double best_value = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < nk; ++k)
            {
                const double level = weights[k] / (lambda * std::numbers::ln2);
                double value = 0.0;
                for (std::size_t n = 0; n < nm; ++n)
                {
                    const double g = channels.g(i, k, n);
                    const double p = g > kDeadCnr ? std::max(0.0, level - 1.0 / g) : 0.0;
                    value += weights[k] * std::log2(1.0 + g * p) - lambda * p;
                }
                if (value > best_value)
                {
                    best_value = value;
                    chosen[i] = k;
                }
            }
            const std::size_t k = chosen[i];
            const double level = weights[k] / (lambda * std::numbers::ln2);
            for (std::size_t n = 0; n < nm; ++n)
            {
                const double g = channels.g(i, k, n);
                trial[i * nm + n] = g > kDeadCnr ? std::max(0.0, level - 1.0 / g) : 0.0;
                used += trial[i * nm + n];
            }
        }
        return used;
    };

    if (budget > 0.0)
    {
        DualSearchOptions opt;
        opt.tolerance = params.dual_search_tolerance;
        opt.bracket_max = params.dual_bracket_max;
        const DualResult res = solve_dual(budget, fill, opt);
        fill(res.value);
        out.lambda = res.value;
        out.power = trial;
        out.chosen_ue = chosen;
    }
    else
    {
        out.lambda = std::numeric_limits<double>::infinity();
    }

    out.ue_rate.assign(nk, 0.0);
    for (std::size_t i = 0; i < nf; ++i)
    {
        const std::size_t k = out.chosen_ue[i];
        for (std::size_t n = 0; n < nm; ++n)
            out.ue_rate[k] += std::log2(1.0 + channels.g(i, k, n) * out.power[i * nm + n]);
    }
    for (std::size_t k = 0; k < nk; ++k)
        out.throughput += weights[k] * out.ue_rate[k];
    return out;
}

WaterfillResult baseline_licensed(const SystemConfig &cfg, const ChannelRealization &channel,
                                  const SolverParams &params)
{
    ParallelChannels pc;
    pc.n_subcarriers = channel.n_subcarriers;
    pc.n_ues = channel.n_ues;
    pc.n_modes = 1;
    pc.gain.resize(pc.n_subcarriers * pc.n_ues);
    // MRT on a 1 x N_T row achieves |h|^2 / N0.
    for (std::size_t i = 0; i < pc.n_subcarriers; ++i)
        for (std::size_t k = 0; k < pc.n_ues; ++k)
            pc.gain[i * pc.n_ues + k] = channel.direct(i, k).squaredNorm() / channel.noise_power;
    return waterfill_select(pc, cfg.ue_weights, cfg.p_bs_max, params);
}

WaterfillResult benchmark_mimo(const SystemConfig &cfg, const ChannelRealization &channel,
                               const SolverParams &params)
{
    const SpatialDecomposition decomp = decompose(channel);
    ParallelChannels pc;
    pc.n_subcarriers = channel.n_subcarriers;
    pc.n_ues = channel.n_ues;
    pc.n_modes = static_cast<std::size_t>(decomp.backend_cnr.cols());
    pc.gain.resize(pc.n_subcarriers * pc.n_ues * pc.n_modes);
    for (std::size_t i = 0; i < pc.n_subcarriers; ++i)
        for (std::size_t k = 0; k < pc.n_ues; ++k)
            for (std::size_t n = 0; n < pc.n_modes; ++n)
                pc.gain[(i * pc.n_ues + k) * pc.n_modes + n] =
                    decomp.backend_cnr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n));
    return waterfill_select(pc, cfg.ue_weights, cfg.p_bs_max, params);
}

namespace
{
SolverParams bound_params(const SolverParams &params)
{
    SolverParams p = params;
    p.max_iterations = std::max(params.bound_max_iterations, params.max_iterations);
    p.convergence_eps = params.convergence_eps * 1e-2;
    return p;
}
} // namespace

double relaxed_upper_bound(const SpatialDecomposition &decomp, const SystemConfig &cfg, const SolverParams &params)
{
    const AllocationResult res = alternating_optimize(decomp, cfg, bound_params(params));
    return res.trace.empty() ? 0.0 : res.trace.back();
}

DropResult evaluate_system(System system, const SystemConfig &cfg, const ChannelRealization &channel,
                           const SolverParams &params)
{
    DropResult out;
    switch (system)
    {
    case System::Sudas: {
        const SpatialDecomposition decomp = decompose(channel);
        const AllocationResult res = alternating_optimize(decomp, cfg, params);
        const ThroughputReport rep = weighted_throughput(res.policy, decomp, cfg);
        out.throughput = rep.throughput;
        out.ue_rate = rep.ue_rate;
        break;
    }
    case System::BaselineLicensed:
    case System::BenchmarkMimo: {
        const WaterfillResult res = system == System::BaselineLicensed ? baseline_licensed(cfg, channel, params)
                                                                       : benchmark_mimo(cfg, channel, params);
        out.throughput = res.throughput;
        out.ue_rate = res.ue_rate;
        break;
    }
    case System::RelaxedUpperBound: {
        const SpatialDecomposition decomp = decompose(channel);
        const AllocationResult res = alternating_optimize(decomp, cfg, bound_params(params));
        out.throughput = res.trace.empty() ? 0.0 : res.trace.back();
        const StreamGains gains = stream_gains(decomp, cfg.n_streams);
        out.ue_rate.assign(cfg.n_ues, 0.0);
        for (std::size_t i = 0; i < res.policy.n_subcarriers; ++i)
            for (std::size_t k = 0; k < res.policy.n_ues; ++k)
                for (std::size_t n = 0; n < res.policy.n_streams; ++n)
                    out.ue_rate[k] += res.policy.s(i, k) *
                                      std::log2(1.0 + sinr_approx(gains.b(i, n), res.policy.bs(i, k, n),
                                                                  gains.f(i, k, n), res.policy.sudas(i, k, n)));
        break;
    }
    }
    out.throughput_bits_s = out.throughput * cfg.subcarrier_bandwidth_hz;
    return out;
}

DropResult run_drop(const SystemConfig &cfg, std::uint64_t seed, System system, const SolverParams &params)
{
    return evaluate_system(system, cfg, generate_channels(cfg, seed), params);
}

const SweepCell &SweepReport::cell(double value, System system) const
{
    for (const SweepCell &c : cells)
        if (c.value == value && c.system == system)
            return c;
    throw DomainError("SweepReport::cell: no such cell");
}

SweepReport run_sweep(const SweepSpec &spec, const SystemConfig &base, const SolverParams &params)
{
    validate(spec);
    validate(params);

    SweepReport report;
    report.variable = spec.variable;
    report.master_seed = base.rng_seed;

    for (double value : spec.values)
    {
        const SystemConfig cfg = sweep_point(base, spec, value);
        const std::size_t first = report.cells.size();
        for (System s : spec.systems)
        {
            SweepCell c;
            c.value = value;
            c.system = s;
            c.drop_tp_bits_s.assign(spec.n_drops, std::numeric_limits<double>::quiet_NaN());
            c.mean_ue_rate.assign(cfg.n_ues, 0.0);
            report.cells.push_back(std::move(c));
        }

        for (std::size_t d = 0; d < spec.n_drops; ++d)
        {
            const ChannelRealization channel = generate_channels(cfg, drop_seed(base.rng_seed, d));
            for (std::size_t j = 0; j < spec.systems.size(); ++j)
            {
                SweepCell &c = report.cells[first + j];
                try
                {
                    const DropResult r = evaluate_system(spec.systems[j], cfg, channel, params);
                    c.drop_tp_bits_s[d] = r.throughput_bits_s;
                    for (std::size_t k = 0; k < cfg.n_ues; ++k)
                        c.mean_ue_rate[k] += r.ue_rate[k];
                }
                catch (const Error &)
                {
                    ++c.n_failures;
                }
            }
        }

        // Aggregation in drop order keeps the report bit-reproducible.
        for (std::size_t j = 0; j < spec.systems.size(); ++j)
        {
            SweepCell &c = report.cells[first + j];
            c.n_drops = spec.n_drops;
            const std::size_t ok = spec.n_drops - c.n_failures;
            double sum = 0.0;
            for (double v : c.drop_tp_bits_s)
                if (!std::isnan(v))
                    sum += v;
            c.mean_tp_bits_s = ok > 0 ? sum / static_cast<double>(ok) : 0.0;
            double ss = 0.0;
            for (double v : c.drop_tp_bits_s)
                if (!std::isnan(v))
                    ss += (v - c.mean_tp_bits_s) * (v - c.mean_tp_bits_s);
            c.std_error = ok > 1 ? std::sqrt(ss / static_cast<double>(ok - 1) / static_cast<double>(ok)) : 0.0;
            for (double &r : c.mean_ue_rate)
                r = ok > 0 ? r / static_cast<double>(ok) : 0.0;
        }
    }
    return report;
}

ConvergenceTrace convergence_trace(const SystemConfig &cfg, const SolverParams &params, std::uint64_t seed)
{
    const ChannelRealization channel = generate_channels(cfg, seed);
    const SpatialDecomposition decomp = decompose(channel);

    ConvergenceTrace out;
    const AllocationResult res = alternating_optimize(decomp, cfg, params);
    out.objective = res.trace;
    const double last = out.objective.empty() ? 0.0 : out.objective.back();
    out.objective.resize(params.max_iterations, last);
    out.upper_bound = relaxed_upper_bound(decomp, cfg, params);
    out.final_exact_throughput = weighted_throughput(res.policy, decomp, cfg).throughput;
    return out;
}

} // namespace sudas
