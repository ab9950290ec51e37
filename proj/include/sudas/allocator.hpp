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

#ifndef SUDAS_ALLOCATOR_HPP
#define SUDAS_ALLOCATOR_HPP

#include "sudas/channel.hpp"
#include "sudas/config.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sudas
{

// ---------------------------------------------------------------------------------------------
// Per-stream SINR of the diagonalized two-hop link. g1/p1 belong to the BS -> SUDAS hop, g2/p2 to
// the SUDAS -> UE hop; powers are the equivalent per-stream transmit powers.
// ---------------------------------------------------------------------------------------------

// g1 p1 g2 p2 / (1 + g1 p1 + g2 p2)
double sinr_exact(double g1, double p1, double g2, double p2);

// g1 p1 g2 p2 / (g1 p1 + g2 p2), with 0/0 := 0. Upper bound of sinr_exact, tight at high SNR.
double sinr_approx(double g1, double p1, double g2, double p2);

// Maximizer over p >= 0 of  w log2(1 + sinr_approx(g1, p, g2, p2_fixed)) - lambda p.
// Returns 0 for a dead stream (g1, g2 or p2_fixed zero) and for lambda = +inf.
// Throws DomainError for negative inputs and for lambda = 0 on a live stream (unbounded).
double update_bs_power(double g1, double g2, double p2_fixed, double lambda, double w);

// Same for the SUDAS -> UE power with the BS power held fixed and dual beta.
double update_sudas_power(double g1, double p1_fixed, double g2, double beta, double w);

// ---------------------------------------------------------------------------------------------
// Dual search
// ---------------------------------------------------------------------------------------------

struct DualSearchOptions
{
    double tolerance = 1e-9;   // accepted relative gap between usage and budget
    double bracket_min = 1e-12; // prices at or below this are treated as zero
    double bracket_max = 1e12;
};

struct DualResult
{
    double value = 0.0;  // dual price; at the feasible end of the final bracket
    double usage = 0.0;  // total power allocated at `value`
    bool slack = false;  // budget not binding: allocation at bracket_min already fits
    int evaluations = 0;
};

// Bisection (in log scale) for the price at which the non-increasing `usage(price)` meets
// `budget`. The returned price always satisfies usage <= budget. Throws SolverError when even
// bracket_max over-spends the budget.
DualResult solve_dual(double budget, const std::function<double(double)> &usage, const DualSearchOptions &opt);

// ---------------------------------------------------------------------------------------------
// Subcarrier assignment
// ---------------------------------------------------------------------------------------------

// w * sum_n [log2(1 + x_n) - x_n / (1 + x_n)]
double subcarrier_metric(double w, std::span<const double> sinr_values);

// metrics is n_subcarriers x n_ues; returns the selected UE of each subcarrier (argmax, ties to the
// lowest UE index).
std::vector<std::size_t> assign_subcarriers(const Eigen::MatrixXd &metrics);

// ---------------------------------------------------------------------------------------------
// Alternating optimization
// ---------------------------------------------------------------------------------------------

struct AllocationPolicy
{
    std::size_t n_subcarriers = 0;
    std::size_t n_ues = 0;
    std::size_t n_streams = 0;

    // Per (subcarrier, UE, stream); index (i * n_ues + k) * n_streams + n. Entries of unassigned
    // pairs hold the candidate powers last computed for them and do not count towards C1/C2.
    std::vector<double> p_bs;
    std::vector<double> p_sudas;
    // Per (subcarrier, UE); index i * n_ues + k. Relaxed in [0, 1] during iterations, binary on return.
    std::vector<double> assignment;

    double lambda = 0.0; // price of the BS budget
    double beta = 0.0;   // price of the SUDAS budget

    static AllocationPolicy zeros(std::size_t n_subcarriers, std::size_t n_ues, std::size_t n_streams);

    std::size_t idx(std::size_t i, std::size_t k, std::size_t n) const { return (i * n_ues + k) * n_streams + n; }
    double bs(std::size_t i, std::size_t k, std::size_t n) const { return p_bs[idx(i, k, n)]; }
    double sudas(std::size_t i, std::size_t k, std::size_t n) const { return p_sudas[idx(i, k, n)]; }
    double s(std::size_t i, std::size_t k) const { return assignment[i * n_ues + k]; }
};

struct ConstraintReport
{
    double bs_power_used = 0.0;    // sum s * p_bs
    double sudas_power_used = 0.0; // sum s * p_sudas
    double bs_slack = 0.0;         // P_T - used
    double sudas_slack = 0.0;      // M P_max - used
    bool c1_ok = false;            // within 1e-6 relative
    bool c2_ok = false;
    bool c3_ok = false; // at most one UE per subcarrier
    bool c4_ok = false; // binary assignment
    bool nonnegative = false;

    bool all_ok() const { return c1_ok && c2_ok && c3_ok && c4_ok && nonnegative; }
};

ConstraintReport check_constraints(const AllocationPolicy &policy, const SystemConfig &cfg);

// Time-sharing relaxed weighted objective built on sinr_approx:
//   sum_{i,k} s_ik w_k sum_n log2(1 + sinr_approx(p_bs, p_sudas)).
double relaxed_objective(const AllocationPolicy &policy, const StreamGains &gains, std::span<const double> weights);

struct AllocationResult
{
    AllocationPolicy policy;
    std::vector<double> trace; // relaxed objective after every iteration
    std::size_t iterations = 0;
    bool converged = false;
};

// Alternating optimization of BS powers, SUDAS powers and subcarrier assignment.
//
// Each iteration runs the two half-steps (BS power with assignment, then SUDAS power with
// assignment), each solving its budget's dual price by bisection. The same iteration is also
// evaluated with the assignment held fixed; the better of the two iterates is kept, so the trace
// never decreases. Stops when the max-norm change of all powers and assignments is <= eps or after
// max_iterations. The returned assignment is binary and the powers feasible.
AllocationResult alternating_optimize(const StreamGains &gains, const SystemConfig &cfg, const SolverParams &params);
AllocationResult alternating_optimize(const SpatialDecomposition &decomp, const SystemConfig &cfg,
                                      const SolverParams &params);

struct ThroughputReport
{
    std::vector<double> ue_rate;        // bits per channel use, summed over subcarriers
    std::vector<double> ue_rate_bits_s; // scaled by the subcarrier bandwidth
    double throughput = 0.0;            // weighted sum of ue_rate
    double throughput_bits_s = 0.0;
};

// Weighted throughput with exact SINR. With use_matrix_path the per-subcarrier rate is taken from
// -log2 det E of the explicitly assembled precoders instead of the scalar formula.
ThroughputReport weighted_throughput(const AllocationPolicy &policy, const SpatialDecomposition &decomp,
                                     const SystemConfig &cfg, bool use_matrix_path = false);

} // namespace sudas

#endif
