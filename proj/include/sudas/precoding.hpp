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

#ifndef SUDAS_PRECODING_HPP
#define SUDAS_PRECODING_HPP

#include "sudas/channel.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sudas
{

// BS precoder P (N_T x N_S) and SUDAS forwarding matrix F (M x M).
struct PrecoderPair
{
    Matrix bs_precoder;
    Matrix sudas_matrix;
};

// Jointly diagonalizing precoders for subcarrier i and UE k:
//   P = V~_BS diag(sqrt(p_bs)),   F = V~_SU diag(f) U~_BS^H
// where V~/U~ are the N_S rightmost (strongest) singular vectors. f_n = sqrt(p_sudas[n] /
// (sigma_n^2 p_bs[n] + N0)) makes stream n radiate exactly p_sudas[n] from the SUDAS, amplified
// noise included.
//
// Throws DomainError for negative or non-finite powers and RankError when N_S exceeds the
// numerical rank of either hop.
PrecoderPair build_precoders(const SpatialDecomposition &decomp, std::span<const double> p_bs,
                             std::span<const double> p_sudas, std::size_t subcarrier, std::size_t ue);

// Gamma = H_SU F H_BS P (M x N_S) and Theta = N0 (H_SU F)(H_SU F)^H + N0 I, the covariance of
// forwarded plus local noise at the UE.
struct EffectiveChannel
{
    Matrix gamma;
    Matrix theta;
};

EffectiveChannel effective_channel(const PrecoderPair &pair, const Matrix &backend, const Vector &frontend_diag,
                                   double noise_power);
EffectiveChannel effective_channel(const PrecoderPair &pair, const ChannelRealization &channel,
                                   std::size_t subcarrier, std::size_t ue);

// Conditioning limit for the Hermitian solves below; beyond it NumericalError is thrown.
inline constexpr double kMaxCondition = 1e12;

// E = [I + Gamma^H Theta^-1 Gamma]^-1
Matrix mse_matrix(const EffectiveChannel &eff);
// E = I - Gamma^H (Gamma Gamma^H + Theta)^-1 Gamma, the matrix-inversion-lemma form of the same.
Matrix mse_matrix_lemma_form(const EffectiveChannel &eff);

// W = (Gamma Gamma^H + Theta)^-1 Gamma (M x N_S); the estimate is W^H y.
Matrix mmse_receiver(const EffectiveChannel &eff);

// -log2 det E in bits per channel use. Throws DomainError if E has a non-positive eigenvalue.
double exact_rate(const Matrix &mse);

// Tr(F (H_BS P P^H H_BS^H + N0 I) F^H): total power radiated by the SUDAS.
double sudas_transmit_power(const PrecoderPair &pair, const Matrix &backend, double noise_power);
double sudas_transmit_power(const PrecoderPair &pair, const ChannelRealization &channel, std::size_t subcarrier);

struct StreamMse
{
    double mse = 0.0;
    double std_error = 0.0;
};

// Signal-level Monte-Carlo: draws unit-variance CSCG symbols and both noise injections, pushes them
// through the two hops and the receiver, and returns the per-stream sample MSE with its standard
// error. Requires n_samples >= 10^4.
std::vector<StreamMse> empirical_mse_check(const PrecoderPair &pair, const ChannelRealization &channel,
                                           std::size_t subcarrier, std::size_t ue, const Matrix &receiver,
                                           std::size_t n_samples, std::uint64_t seed);

} // namespace sudas

#endif
