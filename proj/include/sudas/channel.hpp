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

#ifndef SUDAS_CHANNEL_HPP
#define SUDAS_CHANNEL_HPP

#include "sudas/config.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sudas
{

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;

// One random draw of every channel in the scenario.
//
// Indexing: backend[i] is the M x N_T BS -> SUDAS matrix of subcarrier i. The SUDAS -> UE
// channel is diagonal (each SUDAC forwards in its own sub-band), so frontend(i, k) stores only
// the length-M diagonal. direct(i, k) is the 1 x N_T BS -> UE row used by the licensed-only
// baseline.
struct ChannelRealization
{
    std::size_t n_tx_bs = 0;
    std::size_t n_sudacs = 0;
    std::size_t n_ues = 0;
    std::size_t n_subcarriers = 0;
    double noise_power = 1.0;

    std::vector<Matrix> backend;
    std::vector<Vector> frontend_diag;
    std::vector<RowVector> direct_rows;

    const Matrix &backend_at(std::size_t i) const { return backend.at(i); }
    const Vector &frontend(std::size_t i, std::size_t k) const { return frontend_diag.at(i * n_ues + k); }
    Vector &frontend(std::size_t i, std::size_t k) { return frontend_diag.at(i * n_ues + k); }
    const RowVector &direct(std::size_t i, std::size_t k) const { return direct_rows.at(i * n_ues + k); }
    RowVector &direct(std::size_t i, std::size_t k) { return direct_rows.at(i * n_ues + k); }

    // Dense diagonal matrix of frontend(i, k).
    Matrix frontend_matrix(std::size_t i, std::size_t k) const;
};

// Allocates a realization with all-zero channels of the configured shapes.
ChannelRealization make_zero_channels(const SystemConfig &cfg);

// I.i.d. Rayleigh draw: every entry is CN(0, gain) with the link's mean gain. Identical
// (config, seed) pairs give bit-identical realizations.
ChannelRealization generate_channels(const SystemConfig &cfg, std::uint64_t seed);

// SVD factors H = U * S * V^H with singular values stored in ascending order. The r = min(rows,
// cols) singular values sit on the bottom-right aligned diagonal of S, so the last columns of U
// and of V belong to the strongest singular values for any matrix shape.
struct SvdFactors
{
    Matrix u;             // rows x rows, unitary
    RealVector singular;  // length r, ascending
    Matrix v;             // cols x cols, unitary
    std::size_t rank = 0; // numerical rank

    // rows x cols matrix S.
    Eigen::MatrixXd singular_matrix() const;
    Matrix reconstruct() const;
};

// Numerical rank cut-off relative to the largest singular value.
inline constexpr double kRankTolerance = 1e-12;
// CNRs below this are treated as dead streams downstream.
inline constexpr double kDeadCnr = 1e-15;

SvdFactors svd_ascending(const Matrix &h);
// Closed-form SVD of diag(d): S holds |d| ascending, V is the sorting permutation and U carries the
// unit phases on the same pattern.
SvdFactors svd_diagonal(const Vector &d);

struct SpatialDecomposition
{
    std::size_t n_tx_bs = 0;
    std::size_t n_sudacs = 0;
    std::size_t n_ues = 0;
    std::size_t n_subcarriers = 0;
    double noise_power = 1.0;

    std::vector<SvdFactors> backend;  // per subcarrier
    std::vector<SvdFactors> frontend; // per (subcarrier, UE), index i * n_ues + k

    // Ascending squared singular values over noise power.
    Eigen::MatrixXd backend_cnr;  // n_subcarriers x min(M, N_T)
    Eigen::MatrixXd frontend_cnr; // (n_subcarriers * n_ues) x M

    const SvdFactors &frontend_at(std::size_t i, std::size_t k) const { return frontend.at(i * n_ues + k); }

    // CNR of stream n (0-based, n < n_streams) under the stream pairing used by the precoders:
    // stream n uses the (r - n_streams + n)-th ascending backend value and the
    // (M - n_streams + n)-th ascending frontend value, i.e. the n_streams strongest of each.
    double backend_stream_cnr(std::size_t i, std::size_t n, std::size_t n_streams) const;
    double frontend_stream_cnr(std::size_t i, std::size_t k, std::size_t n, std::size_t n_streams) const;
};

// Throws NumericalError for non-finite channel entries.
SpatialDecomposition decompose(const ChannelRealization &channel);

// Per-stream scalar view of a decomposition: the inputs of the allocator.
struct StreamGains
{
    std::size_t n_subcarriers = 0;
    std::size_t n_ues = 0;
    std::size_t n_streams = 0;
    std::vector<double> backend;  // index i * n_streams + n
    std::vector<double> frontend; // index (i * n_ues + k) * n_streams + n

    double b(std::size_t i, std::size_t n) const { return backend[i * n_streams + n]; }
    double f(std::size_t i, std::size_t k, std::size_t n) const { return frontend[(i * n_ues + k) * n_streams + n]; }
};

StreamGains stream_gains(const SpatialDecomposition &decomp, std::size_t n_streams);

} // namespace sudas

#endif
