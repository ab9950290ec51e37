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

#include "sudas/allocator.hpp"
#include "sudas/error.hpp"
#include "sudas/scenario_io.hpp"
#include "sudas/sim.hpp"

#include <fmt/format.h>

#include <fstream>

namespace sudas
{

namespace
{

std::ofstream open_output(const std::filesystem::path &dir, const char *name)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream &out, const std::filesystem::path &dir, const char *name)
{
    out.flush();
    if (!out)
        throw IoError("write failed: " + (dir / name).string());
}

std::string seed_comment(const char *command, std::uint64_t seed)
{
    return fmt::format("# sudas {} master_seed={}\n", command, seed);
}

} // namespace

void cmd_trace(const Scenario &scenario, const std::filesystem::path &out_dir)
{
    const ConvergenceTrace tr = convergence_trace(scenario.system, scenario.solver, scenario.system.rng_seed);

    auto out = open_output(out_dir, "trace.csv");
    out << seed_comment("trace", scenario.system.rng_seed);
    out << "iteration,objective,upper_bound,ratio\n";
    for (std::size_t l = 0; l < tr.objective.size(); ++l)
    {
        // A zero bound means nothing can be transmitted; the trace is then trivially at the bound.
        const double ratio = tr.upper_bound > 0.0 ? tr.objective[l] / tr.upper_bound : 1.0;
        out << (l + 1) << ',' << format_number(tr.objective[l]) << ',' << format_number(tr.upper_bound) << ','
            << format_number(ratio) << '\n';
    }
    finish(out, out_dir, "trace.csv");
}

void cmd_sweep(const Scenario &scenario, const std::filesystem::path &out_dir)
{
    if (!scenario.has_sweep)
        throw ConfigError("sweep: the configuration has no [sweep] section");
    const SweepReport rep = run_sweep(scenario.sweep, scenario.system, scenario.solver);

    auto out = open_output(out_dir, "sweep.csv");
    out << seed_comment("sweep", rep.master_seed);
    out << "sweep_value,system,mean_tp_bits_s,stderr,n_drops,n_failures\n";
    for (const SweepCell &c : rep.cells)
        out << format_number(c.value) << ',' << to_string(c.system) << ',' << format_number(c.mean_tp_bits_s) << ','
            << format_number(c.std_error) << ',' << c.n_drops << ',' << c.n_failures << '\n';
    finish(out, out_dir, "sweep.csv");
}

void cmd_solve(const Scenario &scenario, const std::filesystem::path &out_dir)
{
    const SystemConfig &cfg = scenario.system;
    const ChannelRealization channel = generate_channels(cfg, cfg.rng_seed);
    const SpatialDecomposition decomp = decompose(channel);
    const AllocationResult res = alternating_optimize(decomp, cfg, scenario.solver);
    const ThroughputReport tp = weighted_throughput(res.policy, decomp, cfg);
    const ConstraintReport cons = check_constraints(res.policy, cfg);
    const AllocationPolicy &p = res.policy;

    auto alloc = open_output(out_dir, "allocation.csv");
    alloc << seed_comment("solve", cfg.rng_seed);
    alloc << "subcarrier,ue,stream,p_bs,p_sudas,s\n";
    for (std::size_t i = 0; i < p.n_subcarriers; ++i)
        for (std::size_t k = 0; k < p.n_ues; ++k)
        {
            const double s = p.s(i, k);
            for (std::size_t n = 0; n < p.n_streams; ++n)
            {
                // Unassigned pairs carry no power.
                const double pb = s > 0.0 ? p.bs(i, k, n) : 0.0;
                const double ps = s > 0.0 ? p.sudas(i, k, n) : 0.0;
                alloc << i << ',' << k << ',' << n << ',' << format_number(pb) << ',' << format_number(ps) << ','
                      << format_number(s) << '\n';
            }
        }
    finish(alloc, out_dir, "allocation.csv");

    auto summary = open_output(out_dir, "summary.csv");
    summary << seed_comment("solve", cfg.rng_seed);
    summary << "quantity,ue,value\n";
    auto row = [&](const char *name, const std::string &ue, double v) {
        summary << name << ',' << ue << ',' << format_number(v) << '\n';
    };
    for (std::size_t k = 0; k < cfg.n_ues; ++k)
    {
        row("rho_bits_per_use", std::to_string(k), tp.ue_rate[k]);
        row("rho_bits_s", std::to_string(k), tp.ue_rate_bits_s[k]);
    }
    row("throughput_bits_per_use", "", tp.throughput);
    row("throughput_bits_s", "", tp.throughput_bits_s);
    row("relaxed_objective", "", res.trace.empty() ? 0.0 : res.trace.back());
    row("bs_power_used", "", cons.bs_power_used);
    row("bs_power_slack", "", cons.bs_slack);
    row("sudas_power_used", "", cons.sudas_power_used);
    row("sudas_power_slack", "", cons.sudas_slack);
    row("iterations", "", static_cast<double>(res.iterations));
    row("converged", "", res.converged ? 1.0 : 0.0);
    finish(summary, out_dir, "summary.csv");
}

} // namespace sudas
