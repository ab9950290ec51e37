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

#include "oracles.hpp"

#include "sudas/error.hpp"
#include "sudas/sim.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace sudas;

namespace
{

SystemConfig desk_config()
{
    SystemConfig cfg;
    cfg.n_tx_bs = 4;
    cfg.n_sudacs = 4;
    cfg.n_streams = 4;
    cfg.n_ues = 2;
    cfg.n_subcarriers = 16;
    cfg.ue_weights = {1.0, 1.0};
    cfg.backend_gain = db_to_linear(10.0);
    cfg.frontend_gain = db_to_linear(30.0);
    cfg.direct_gain = db_to_linear(10.0);
    return cfg;
}

// Euclidean projection onto {p >= 0, sum p = budget}.
std::vector<double> project_simplex(const std::vector<double> &v, double budget)
{
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
    {
        cum += u[j];
        const double t = (cum - budget) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0)
            theta = t;
    }
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out[j] = std::max(0.0, v[j] - theta);
    return out;
}

// Projected gradient ascent on sum_j w_j log2(1 + g_j p_j) under a sum-power budget.
double projected_gradient_value(const std::vector<double> &g, const std::vector<double> &w, double budget)
{
    std::vector<double> p(g.size(), budget / static_cast<double>(g.size()));
    const double gmax = *std::max_element(g.begin(), g.end());
    const double wmax = *std::max_element(w.begin(), w.end());
    // Inverse Lipschitz bound of the gradient.
    double step = 1.0 / (wmax * gmax * gmax / std::log(2.0));
    auto value = [&](const std::vector<double> &x) {
        double v = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            v += w[j] * std::log2(1.0 + g[j] * x[j]);
        return v;
    };
    for (int it = 0; it < 200000; ++it)
    {
        std::vector<double> next(p.size());
        for (std::size_t j = 0; j < p.size(); ++j)
            next[j] = p[j] + step * w[j] * g[j] / ((1.0 + g[j] * p[j]) * std::log(2.0));
        next = project_simplex(next, budget);
        double diff = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j)
            diff = std::max(diff, std::abs(next[j] - p[j]));
        p = next;
        if (diff < 1e-13 * budget)
            break;
    }
    return value(p);
}

// Best value over all subcarrier-to-UE maps, each solved by projected gradient.
double enumerated_waterfill(const ParallelChannels &pc, const std::vector<double> &w, double budget)
{
    std::size_t combos = 1;
    for (std::size_t i = 0; i < pc.n_subcarriers; ++i)
        combos *= pc.n_ues;
    double best = 0.0;
    for (std::size_t code = 0; code < combos; ++code)
    {
        std::vector<double> g, wt;
        std::size_t c = code;
        for (std::size_t i = 0; i < pc.n_subcarriers; ++i)
        {
            const std::size_t k = c % pc.n_ues;
            c /= pc.n_ues;
            for (std::size_t n = 0; n < pc.n_modes; ++n)
            {
                g.push_back(pc.g(i, k, n));
                wt.push_back(w[k]);
            }
        }
        best = std::max(best, projected_gradient_value(g, wt, budget));
    }
    return best;
}

} // namespace

TEST_CASE("drop seeds are deterministic and distinct")
{
    CHECK(drop_seed(1, 0) == drop_seed(1, 0));
    CHECK(drop_seed(1, 0) != drop_seed(1, 1));
    CHECK(drop_seed(1, 0) != drop_seed(2, 0));
}

TEST_CASE("system and sweep names round-trip")
{
    for (System s : {System::Sudas, System::BaselineLicensed, System::BenchmarkMimo, System::RelaxedUpperBound})
        CHECK(parse_system(to_string(s)) == s);
    for (SweepVariable v : {SweepVariable::BsPower, SweepVariable::NSudacs, SweepVariable::NTxBs})
        CHECK(parse_sweep_variable(to_string(v)) == v);
    CHECK_FALSE(parse_system("relay").has_value());
}

TEST_CASE("sweep points and spec validation")
{
    const SystemConfig base = desk_config();
    SweepSpec spec;
    spec.variable = SweepVariable::BsPower;
    spec.values = {30.0};
    CHECK(sweep_point(base, spec, 30.0).p_bs_max == doctest::Approx(1.0));
    spec.variable = SweepVariable::NSudacs;
    spec.auto_streams = true;
    const SystemConfig two = sweep_point(base, spec, 2.0);
    CHECK(two.n_sudacs == 2);
    CHECK(two.n_streams == 2);
    spec.auto_streams = false;
    CHECK_THROWS_AS(sweep_point(base, spec, 2.0), ConfigError);

    SweepSpec bad;
    bad.values = {};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad.values = {3.0, 1.0};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad.values = {1.0};
    bad.n_drops = 0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad.n_drops = 1;
    bad.variable = SweepVariable::NTxBs;
    bad.values = {2.5};
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("zero BS budget gives zero throughput for every system")
{
    SystemConfig cfg = desk_config();
    cfg.p_bs_max = 0.0;
    for (System s : {System::Sudas, System::BaselineLicensed, System::BenchmarkMimo, System::RelaxedUpperBound})
        CHECK(run_drop(cfg, 4, s).throughput == 0.0);
}

TEST_CASE("drops are reproducible")
{
    const SystemConfig cfg = desk_config();
    for (System s : {System::Sudas, System::BaselineLicensed, System::BenchmarkMimo})
    {
        const DropResult a = run_drop(cfg, 21, s), b = run_drop(cfg, 21, s);
        CHECK(a.throughput == b.throughput);
        CHECK(a.ue_rate == b.ue_rate);
    }
}

TEST_CASE("more streams never hurt")
{
    SystemConfig cfg = desk_config();
    cfg.n_tx_bs = cfg.n_sudacs = 2;
    for (std::uint64_t seed = 1; seed <= 30; ++seed)
    {
        cfg.n_streams = 2;
        const double two = run_drop(cfg, seed, System::Sudas).throughput;
        cfg.n_streams = 1;
        const double one = run_drop(cfg, seed, System::Sudas).throughput;
        CHECK(two >= one * (1.0 - 1e-9));
    }
}

TEST_CASE("baseline: degenerate cases")
{
    SystemConfig cfg = desk_config();
    cfg.direct_gain = 0.0;
    CHECK(run_drop(cfg, 3, System::BaselineLicensed).throughput == 0.0);

    cfg = desk_config();
    cfg.n_subcarriers = 1;
    cfg.n_ues = 1;
    cfg.ue_weights = {1.0};
    const ChannelRealization ch = generate_channels(cfg, 3);
    const WaterfillResult r = baseline_licensed(cfg, ch);
    REQUIRE(r.power.size() == 1);
    CHECK(r.power[0] == doctest::Approx(cfg.p_bs_max).epsilon(1e-8));
    const double g = ch.direct(0, 0).squaredNorm() / cfg.noise_power;
    CHECK(r.throughput == doctest::Approx(std::log2(1.0 + g * cfg.p_bs_max)).epsilon(1e-8));
}

TEST_CASE("water-filling matches a projected-gradient oracle")
{
    std::mt19937_64 rng(8);
    std::exponential_distribution<double> ex(1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        ParallelChannels pc;
        pc.n_subcarriers = 4;
        pc.n_ues = 1 + trial % 2;
        pc.n_modes = 1 + trial % 3;
        for (std::size_t j = 0; j < pc.n_subcarriers * pc.n_ues * pc.n_modes; ++j)
            pc.gain.push_back(ex(rng) * 3.0);
        const std::vector<double> w = pc.n_ues == 1 ? std::vector<double>{1.3} : std::vector<double>{1.0, 1.7};
        const double budget = 0.5 + 5.0 * (trial % 4);
        const WaterfillResult r = waterfill_select(pc, w, budget, SolverParams{});
        const double used = std::accumulate(r.power.begin(), r.power.end(), 0.0);
        CHECK(used <= budget * (1.0 + 1e-9));
        CHECK(r.throughput == doctest::Approx(enumerated_waterfill(pc, w, budget)).epsilon(1e-3));
    }
}

TEST_CASE("benchmark with one antenna coincides with the baseline on the same channel")
{
    SystemConfig cfg = desk_config();
    cfg.n_sudacs = 1;
    cfg.n_streams = 1;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        ChannelRealization ch = generate_channels(cfg, seed);
        for (std::size_t i = 0; i < cfg.n_subcarriers; ++i)
            for (std::size_t k = 0; k < cfg.n_ues; ++k)
                ch.direct(i, k) = ch.backend[i].row(0);
        const double base = baseline_licensed(cfg, ch).throughput;
        CHECK(benchmark_mimo(cfg, ch).throughput == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("benchmark of a zero channel is zero")
{
    SystemConfig cfg = desk_config();
    cfg.backend_gain = 0.0;
    CHECK(run_drop(cfg, 2, System::BenchmarkMimo).throughput == 0.0);
}

TEST_CASE("ordering and relaxed-bound dominance hold on every seed")
{
    const SystemConfig cfg = desk_config();
    const SolverParams params;
    for (std::uint64_t drop = 0; drop < 100; ++drop)
    {
        const std::uint64_t seed = drop_seed(5, drop);
        const ChannelRealization ch = generate_channels(cfg, seed);
        const SpatialDecomposition d = decompose(ch);
        const AllocationResult res = alternating_optimize(d, cfg, params);
        const double sudas = weighted_throughput(res.policy, d, cfg).throughput;
        CHECK(sudas <= benchmark_mimo(cfg, ch).throughput);
        CHECK(sudas >= baseline_licensed(cfg, ch).throughput);
        CHECK(relaxed_upper_bound(d, cfg, params) >= sudas);
        CHECK(res.trace.back() >= sudas);
    }
}

TEST_CASE("relaxed bound of a zero budget is zero")
{
    SystemConfig cfg = desk_config();
    cfg.p_sudac_max = 0.0;
    const SpatialDecomposition d = decompose(generate_channels(cfg, 1));
    CHECK(relaxed_upper_bound(d, cfg, SolverParams{}) == 0.0);
}

TEST_CASE("single-drop sweep equals the drop")
{
    const SystemConfig cfg = desk_config();
    SweepSpec spec;
    spec.values = {46.0};
    spec.n_drops = 1;
    spec.systems = {System::Sudas, System::BaselineLicensed};
    const SweepReport rep = run_sweep(spec, cfg, SolverParams{});
    REQUIRE(rep.cells.size() == 2);
    const SystemConfig point = sweep_point(cfg, spec, 46.0);
    const DropResult d = run_drop(point, drop_seed(cfg.rng_seed, 0), System::Sudas);
    CHECK(rep.cell(46.0, System::Sudas).mean_tp_bits_s == d.throughput * cfg.subcarrier_bandwidth_hz);
    CHECK(rep.cell(46.0, System::Sudas).std_error == 0.0);
    CHECK(rep.cell(46.0, System::Sudas).n_failures == 0);
}

TEST_CASE("sweeps are reproducible and trend upwards in BS power")
{
    SystemConfig cfg = desk_config();
    cfg.n_subcarriers = 8;
    SweepSpec spec;
    spec.values = {30.0, 38.0, 46.0};
    spec.n_drops = 10;
    const SweepReport a = run_sweep(spec, cfg, SolverParams{});
    const SweepReport b = run_sweep(spec, cfg, SolverParams{});
    REQUIRE(a.cells.size() == 6);
    for (std::size_t j = 0; j < a.cells.size(); ++j)
    {
        CHECK(a.cells[j].mean_tp_bits_s == b.cells[j].mean_tp_bits_s);
        CHECK(a.cells[j].std_error == b.cells[j].std_error);
        CHECK(a.cells[j].drop_tp_bits_s == b.cells[j].drop_tp_bits_s);
    }
    CHECK(a.cell(30.0, System::Sudas).mean_tp_bits_s < a.cell(38.0, System::Sudas).mean_tp_bits_s);
    CHECK(a.cell(38.0, System::Sudas).mean_tp_bits_s < a.cell(46.0, System::Sudas).mean_tp_bits_s);
    for (double v : spec.values)
        CHECK(a.cell(v, System::Sudas).mean_tp_bits_s > a.cell(v, System::BaselineLicensed).mean_tp_bits_s);
}

TEST_CASE("solver failures are counted, not fatal")
{
    SystemConfig cfg = desk_config();
    cfg.n_subcarriers = 2;
    SolverParams params;
    params.dual_bracket_max = 1e-9; // too low a ceiling: every budgeted dual search fails
    SweepSpec spec;
    spec.values = {46.0};
    spec.n_drops = 3;
    spec.systems = {System::Sudas};
    const SweepReport rep = run_sweep(spec, cfg, params);
    CHECK(rep.cells[0].n_failures == 3);
    CHECK(std::isnan(rep.cells[0].drop_tp_bits_s[0]));
}

TEST_CASE("convergence trace has one entry per iteration and stays below the bound")
{
    const SystemConfig cfg = desk_config();
    const SolverParams params;
    const ConvergenceTrace tr = convergence_trace(cfg, params, 3);
    REQUIRE(tr.objective.size() == params.max_iterations);
    for (std::size_t l = 1; l < tr.objective.size(); ++l)
        CHECK(tr.objective[l] >= tr.objective[l - 1] * (1.0 - params.dual_search_tolerance));
    CHECK(tr.objective.back() <= tr.upper_bound * (1.0 + 1e-9));
    CHECK(tr.objective.back() >= 0.99 * tr.upper_bound);
    CHECK(tr.final_exact_throughput <= tr.objective.back());
}
