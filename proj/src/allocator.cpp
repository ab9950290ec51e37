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
#include "sudas/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace sudas
{

double sinr_exact(double g1, double p1, double g2, double p2)
{
    const double a = g1 * p1;
    const double b = g2 * p2;
    return a * b / (1.0 + a + b);
}

double sinr_approx(double g1, double p1, double g2, double p2)
{
    const double a = g1 * p1;
    const double b = g2 * p2;
    const double den = a + b;
    return den > 0.0 ? a * b / den : 0.0;
}

namespace
{
// Stationary point of w log2(1 + g x c / (g x + c)) - price x with c the fixed other-hop SNR.
//
// Setting the derivative to zero gives a quadratic in u = g x whose positive root is
//   x = c (sqrt(c^2 + 4 (1 + c) w g / (price ln2)) - c - 2) / (2 g (1 + c)).
// Rationalizing the bracket avoids cancellation at large c:
//   x = 2 c (w g / (price ln2) - 1) / (g (sqrt(c^2 + D) + c + 2)),  D = 4 (1 + c) w g / (price ln2),
// and shows the clamp is active exactly when price >= w g / ln2.
double closed_form_power(double g, double c, double price, double w, const char *who)
{
    if (!(g >= 0.0) || !(c >= 0.0) || !(w > 0.0) || std::isnan(price) || price < 0.0)
        throw DomainError(std::string(who) + ": arguments must be >= 0 (weight > 0)");
    if (g <= kDeadCnr || c <= 0.0 || std::isinf(price))
        return 0.0;
    if (price == 0.0)
        throw DomainError(std::string(who) + ": zero dual price with a live stream is unbounded");

    const double ratio = w * g / (price * std::numbers::ln2);
    if (ratio <= 1.0)
        return 0.0;
    const double d = 4.0 * (1.0 + c) * ratio;
    return 2.0 * c * (ratio - 1.0) / (g * (std::sqrt(c * c + d) + c + 2.0));
}
} // namespace

double update_bs_power(double g1, double g2, double p2_fixed, double lambda, double w)
{
    if (!(p2_fixed >= 0.0) || !(g2 >= 0.0))
        throw DomainError("update_bs_power: arguments must be >= 0");
    return closed_form_power(g1, g2 * p2_fixed, lambda, w, "update_bs_power");
}

double update_sudas_power(double g1, double p1_fixed, double g2, double beta, double w)
{
    if (!(p1_fixed >= 0.0) || !(g1 >= 0.0))
        throw DomainError("update_sudas_power: arguments must be >= 0");
    return closed_form_power(g2, g1 * p1_fixed, beta, w, "update_sudas_power");
}

DualResult solve_dual(double budget, const std::function<double(double)> &usage, const DualSearchOptions &opt)
{
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw DomainError("solve_dual: budget must be finite and > 0");

    DualResult res;
    double lo = opt.bracket_min;
    double hi = opt.bracket_max;

    const double at_lo = usage(lo);
    ++res.evaluations;
    if (at_lo <= budget)
    {
        res.value = lo;
        res.usage = at_lo;
        res.slack = true;
        return res;
    }
    double at_hi = usage(hi);
    ++res.evaluations;
    if (at_hi > budget)
        throw SolverError("solve_dual: budget unreachable even at dual price " + std::to_string(hi));

    // Invariant: usage(lo) > budget >= usage(hi).
    for (int it = 0; it < 400; ++it)
    {
        if (budget - at_hi <= opt.tolerance * budget || hi <= lo * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
            break;
        const double mid = std::sqrt(lo * hi);
        const double at_mid = usage(mid);
        ++res.evaluations;
        if (at_mid > budget)
            lo = mid;
        else
        {
            hi = mid;
            at_hi = at_mid;
        }
    }
    res.value = hi;
    res.usage = at_hi;
    return res;
}

double subcarrier_metric(double w, std::span<const double> sinr_values)
{
    double sum = 0.0;
    for (double x : sinr_values)
    {
        if (!(x >= 0.0))
            throw DomainError("subcarrier_metric: SINR values must be >= 0");
        sum += std::log2(1.0 + x) - x / (1.0 + x);
    }
    return w * sum;
}

std::vector<std::size_t> assign_subcarriers(const Eigen::MatrixXd &metrics)
{
    if (!metrics.allFinite())
        throw DomainError("assign_subcarriers: metrics must be finite");
    std::vector<std::size_t> out(static_cast<std::size_t>(metrics.rows()), 0);
    for (Eigen::Index i = 0; i < metrics.rows(); ++i)
    {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < metrics.cols(); ++k)
            if (metrics(i, k) > metrics(i, best))
                best = k;
        out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(best);
    }
    return out;
}

AllocationPolicy AllocationPolicy::zeros(std::size_t n_subcarriers, std::size_t n_ues, std::size_t n_streams)
{
    AllocationPolicy p;
    p.n_subcarriers = n_subcarriers;
    p.n_ues = n_ues;
    p.n_streams = n_streams;
    p.p_bs.assign(n_subcarriers * n_ues * n_streams, 0.0);
    p.p_sudas.assign(n_subcarriers * n_ues * n_streams, 0.0);
    p.assignment.assign(n_subcarriers * n_ues, 0.0);
    return p;
}

ConstraintReport check_constraints(const AllocationPolicy &policy, const SystemConfig &cfg)
{
    constexpr double tol = 1e-6;
    ConstraintReport r;
    r.nonnegative = true;
    r.c3_ok = true;
    r.c4_ok = true;
    for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
    {
        double per_sub = 0.0;
        for (std::size_t k = 0; k < policy.n_ues; ++k)
        {
            const double s = policy.s(i, k);
            per_sub += s;
            if (s != 0.0 && s != 1.0)
                r.c4_ok = false;
            if (s < 0.0)
                r.nonnegative = false;
            for (std::size_t n = 0; n < policy.n_streams; ++n)
            {
                const double pb = policy.bs(i, k, n);
                const double ps = policy.sudas(i, k, n);
                if (!(pb >= 0.0) || !(ps >= 0.0))
                    r.nonnegative = false;
                r.bs_power_used += s * pb;
                r.sudas_power_used += s * ps;
            }
        }
        if (per_sub > 1.0)
            r.c3_ok = false;
    }
    r.bs_slack = cfg.p_bs_max - r.bs_power_used;
    r.sudas_slack = cfg.sudas_budget() - r.sudas_power_used;
    r.c1_ok = r.bs_power_used <= cfg.p_bs_max * (1.0 + tol) + (cfg.p_bs_max == 0.0 ? 1e-300 : 0.0);
    r.c2_ok = r.sudas_power_used <= cfg.sudas_budget() * (1.0 + tol) + (cfg.sudas_budget() == 0.0 ? 1e-300 : 0.0);
    return r;
}

double relaxed_objective(const AllocationPolicy &policy, const StreamGains &gains, std::span<const double> weights)
{
    double total = 0.0;
    for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
        for (std::size_t k = 0; k < policy.n_ues; ++k)
        {
            const double s = policy.s(i, k);
            if (s <= 0.0)
                continue;
            double rate = 0.0;
            for (std::size_t n = 0; n < policy.n_streams; ++n)
                rate += std::log2(1.0 + sinr_approx(gains.b(i, n), policy.bs(i, k, n), gains.f(i, k, n),
                                                    policy.sudas(i, k, n)));
            total += s * weights[k] * rate;
        }
    return total;
}

namespace
{

enum class Hop
{
    Bs,
    Sudas
};

// One half-step of the alternating loop: re-solves the powers of `hop` with the other hop fixed,
// pricing its budget by bisection. With `fixed_assignment` empty the assignment is re-derived from
// the subcarrier metric at every trial price, otherwise it is held.
class HalfStep
{
public:
    HalfStep(const StreamGains &gains, const SystemConfig &cfg, const SolverParams &params)
        : gains_(gains), weights_(cfg.ue_weights), bs_budget_(cfg.p_bs_max), sudas_budget_(cfg.sudas_budget())
    {
        opt_.tolerance = params.dual_search_tolerance;
        opt_.bracket_max = params.dual_bracket_max;
    }

    // Updates policy.p_bs or policy.p_sudas (and the assignment unless fixed) in place.
    void run(AllocationPolicy &policy, Hop hop, bool fixed_assignment) const
    {
        const double budget = hop == Hop::Bs ? bs_budget_ : sudas_budget_;
        std::vector<double> &target = hop == Hop::Bs ? policy.p_bs : policy.p_sudas;
        double &dual = hop == Hop::Bs ? policy.lambda : policy.beta;

        if (budget <= 0.0)
        {
            std::fill(target.begin(), target.end(), 0.0);
            dual = std::numeric_limits<double>::infinity();
            if (!fixed_assignment)
                reassign(policy);
            return;
        }

        AllocationPolicy trial = policy;
        auto evaluate = [&](double price) {
            fill_powers(trial, hop, price);
            if (!fixed_assignment)
                reassign(trial);
            return usage(trial, hop);
        };
        const DualResult res = solve_dual(budget, evaluate, opt_);
        evaluate(res.value);
        policy = std::move(trial);
        dual = res.slack ? 0.0 : res.value;
    }

    void reassign(AllocationPolicy &policy) const
    {
        Eigen::MatrixXd metrics(static_cast<Eigen::Index>(policy.n_subcarriers),
                                static_cast<Eigen::Index>(policy.n_ues));
        std::vector<double> sinr(policy.n_streams);
        for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
            for (std::size_t k = 0; k < policy.n_ues; ++k)
            {
                for (std::size_t n = 0; n < policy.n_streams; ++n)
                    sinr[n] = sinr_approx(gains_.b(i, n), policy.bs(i, k, n), gains_.f(i, k, n),
                                          policy.sudas(i, k, n));
                metrics(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    subcarrier_metric(weights_[k], sinr);
            }
        const auto chosen = assign_subcarriers(metrics);
        for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
            for (std::size_t k = 0; k < policy.n_ues; ++k)
                policy.assignment[i * policy.n_ues + k] = chosen[i] == k ? 1.0 : 0.0;
    }

private:
    void fill_powers(AllocationPolicy &policy, Hop hop, double price) const
    {
        for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
            for (std::size_t k = 0; k < policy.n_ues; ++k)
                for (std::size_t n = 0; n < policy.n_streams; ++n)
                {
                    const std::size_t j = policy.idx(i, k, n);
                    const double gb = gains_.b(i, n);
                    const double gf = gains_.f(i, k, n);
                    if (gb <= kDeadCnr || gf <= kDeadCnr)
                    {
                        policy.p_bs[j] = 0.0;
                        policy.p_sudas[j] = 0.0;
                        continue;
                    }
                    if (hop == Hop::Bs)
                        policy.p_bs[j] = update_bs_power(gb, gf, policy.p_sudas[j], price, weights_[k]);
                    else
                        policy.p_sudas[j] = update_sudas_power(gb, policy.p_bs[j], gf, price, weights_[k]);
                }
    }

    static double usage(const AllocationPolicy &policy, Hop hop)
    {
        const std::vector<double> &p = hop == Hop::Bs ? policy.p_bs : policy.p_sudas;
        double total = 0.0;
        for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
            for (std::size_t k = 0; k < policy.n_ues; ++k)
            {
                const double s = policy.s(i, k);
                if (s <= 0.0)
                    continue;
                for (std::size_t n = 0; n < policy.n_streams; ++n)
                    total += s * p[policy.idx(i, k, n)];
            }
        return total;
    }

    const StreamGains &gains_;
    const std::vector<double> &weights_;
    double bs_budget_;
    double sudas_budget_;
    DualSearchOptions opt_;
};

double max_change(const AllocationPolicy &a, const AllocationPolicy &b)
{
    double d = 0.0;
    for (std::size_t j = 0; j < a.p_bs.size(); ++j)
    {
        d = std::max(d, std::abs(a.p_bs[j] - b.p_bs[j]));
        d = std::max(d, std::abs(a.p_sudas[j] - b.p_sudas[j]));
    }
    for (std::size_t j = 0; j < a.assignment.size(); ++j)
        d = std::max(d, std::abs(a.assignment[j] - b.assignment[j]));
    return d;
}

bool is_binary(const AllocationPolicy &p)
{
    return std::all_of(p.assignment.begin(), p.assignment.end(), [](double s) { return s == 0.0 || s == 1.0; });
}

// Uniform split of both budgets over the live streams with s = 1/K; meets C1 and C2 with equality.
AllocationPolicy initial_point(const StreamGains &gains, const SystemConfig &cfg)
{
    AllocationPolicy p = AllocationPolicy::zeros(gains.n_subcarriers, gains.n_ues, gains.n_streams);
    const double share = 1.0 / static_cast<double>(gains.n_ues);
    std::fill(p.assignment.begin(), p.assignment.end(), share);

    std::size_t live = 0;
    for (std::size_t i = 0; i < gains.n_subcarriers; ++i)
        for (std::size_t k = 0; k < gains.n_ues; ++k)
            for (std::size_t n = 0; n < gains.n_streams; ++n)
                if (gains.b(i, n) > kDeadCnr && gains.f(i, k, n) > kDeadCnr)
                    ++live;
    if (live == 0)
        return p;

    const double denom = static_cast<double>(live) * share;
    for (std::size_t i = 0; i < gains.n_subcarriers; ++i)
        for (std::size_t k = 0; k < gains.n_ues; ++k)
            for (std::size_t n = 0; n < gains.n_streams; ++n)
                if (gains.b(i, n) > kDeadCnr && gains.f(i, k, n) > kDeadCnr)
                {
                    p.p_bs[p.idx(i, k, n)] = cfg.p_bs_max / denom;
                    p.p_sudas[p.idx(i, k, n)] = cfg.sudas_budget() / denom;
                }
    return p;
}

} // namespace

AllocationResult alternating_optimize(const StreamGains &gains, const SystemConfig &cfg, const SolverParams &params)
{
    validate(params);
    if (cfg.ue_weights.size() != gains.n_ues)
        throw ConfigError("scenario.ue_weights: size does not match the number of UEs");

    const HalfStep step(gains, cfg, params);
    const std::span<const double> weights(cfg.ue_weights);

    AllocationResult result;
    AllocationPolicy current = initial_point(gains, cfg);
    double objective = relaxed_objective(current, gains, weights);

    for (std::size_t l = 1; l <= params.max_iterations; ++l)
    {
        // BS powers with assignment, then SUDAS powers with assignment.
        AllocationPolicy joint = current;
        step.run(joint, Hop::Bs, false);
        step.run(joint, Hop::Sudas, false);
        // The second reassignment can move BS power onto a different UE; re-price C1 for it.
        if (!check_constraints(joint, cfg).c1_ok)
            step.run(joint, Hop::Bs, true);
        const double joint_obj = relaxed_objective(joint, gains, weights);

        // Same iteration with the assignment frozen: an exact block ascent step, never worse.
        AllocationPolicy frozen = current;
        step.run(frozen, Hop::Bs, true);
        step.run(frozen, Hop::Sudas, true);
        const double frozen_obj = relaxed_objective(frozen, gains, weights);

        AllocationPolicy next = joint_obj >= frozen_obj ? std::move(joint) : std::move(frozen);
        const double next_obj = std::max(joint_obj, frozen_obj);

        const double change = max_change(next, current);
        current = std::move(next);
        objective = next_obj;
        result.trace.push_back(objective);
        result.iterations = l;
        if (change <= params.convergence_eps)
        {
            result.converged = true;
            break;
        }
    }

    // Rounding: pick the metric argmax per subcarrier and re-price both budgets for it.
    if (!is_binary(current))
    {
        step.reassign(current);
        for (std::size_t pass = 0; pass < params.max_iterations; ++pass)
        {
            const AllocationPolicy before = current;
            step.run(current, Hop::Bs, true);
            step.run(current, Hop::Sudas, true);
            if (max_change(current, before) <= params.convergence_eps)
                break;
        }
    }

    result.policy = std::move(current);
    return result;
}

AllocationResult alternating_optimize(const SpatialDecomposition &decomp, const SystemConfig &cfg,
                                      const SolverParams &params)
{
    return alternating_optimize(stream_gains(decomp, cfg.n_streams), cfg, params);
}

ThroughputReport weighted_throughput(const AllocationPolicy &policy, const SpatialDecomposition &decomp,
                                     const SystemConfig &cfg, bool use_matrix_path)
{
    const StreamGains gains = stream_gains(decomp, policy.n_streams);
    ThroughputReport rep;
    rep.ue_rate.assign(policy.n_ues, 0.0);

    std::vector<double> pb(policy.n_streams), ps(policy.n_streams);
    for (std::size_t i = 0; i < policy.n_subcarriers; ++i)
        for (std::size_t k = 0; k < policy.n_ues; ++k)
        {
            const double s = policy.s(i, k);
            if (s <= 0.0)
                continue;
            double rate = 0.0;
            if (use_matrix_path)
            {
                for (std::size_t n = 0; n < policy.n_streams; ++n)
                {
                    pb[n] = policy.bs(i, k, n);
                    ps[n] = policy.sudas(i, k, n);
                }
                const PrecoderPair pair = build_precoders(decomp, pb, ps, i, k);
                const SvdFactors &back = decomp.backend.at(i);
                const SvdFactors &front = decomp.frontend_at(i, k);
                const Vector front_diag = front.reconstruct().diagonal();
                const EffectiveChannel eff =
                    effective_channel(pair, back.reconstruct(), front_diag, decomp.noise_power);
                rate = exact_rate(mse_matrix(eff));
            }
            else
            {
                for (std::size_t n = 0; n < policy.n_streams; ++n)
                    rate += std::log2(
                        1.0 + sinr_exact(gains.b(i, n), policy.bs(i, k, n), gains.f(i, k, n), policy.sudas(i, k, n)));
            }
            rep.ue_rate[k] += s * rate;
        }

    rep.ue_rate_bits_s.resize(policy.n_ues);
    for (std::size_t k = 0; k < policy.n_ues; ++k)
    {
        rep.ue_rate_bits_s[k] = rep.ue_rate[k] * cfg.subcarrier_bandwidth_hz;
        rep.throughput += cfg.ue_weights[k] * rep.ue_rate[k];
    }
    rep.throughput_bits_s = rep.throughput * cfg.subcarrier_bandwidth_hz;
    return rep;
}

} // namespace sudas
