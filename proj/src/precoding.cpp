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

#include "sudas/precoding.hpp"
#include "sudas/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace sudas
{

namespace
{
using cd = std::complex<double>;

void check_powers(std::span<const double> p, const char *what)
{
    for (double v : p)
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError(std::string("build_precoders: ") + what + " powers must be finite and >= 0");
}

// Cholesky of a Hermitian positive-definite matrix with a conditioning check.
Eigen::LLT<Matrix> factor_hpd(const Matrix &a, const char *what)
{
    Eigen::LLT<Matrix> llt(0.5 * (a + a.adjoint()));
    if (llt.info() != Eigen::Success || !(llt.rcond() * kMaxCondition >= 1.0))
        throw NumericalError(std::string(what) + ": matrix is numerically singular");
    return llt;
}
} // namespace

PrecoderPair build_precoders(const SpatialDecomposition &decomp, std::span<const double> p_bs,
                             std::span<const double> p_sudas, std::size_t subcarrier, std::size_t ue)
{
    if (p_bs.size() != p_sudas.size())
        throw DomainError("build_precoders: p_bs and p_sudas must have the same length");
    check_powers(p_bs, "BS");
    check_powers(p_sudas, "SUDAS");

    const std::size_t ns = p_bs.size();
    const SvdFactors &back = decomp.backend.at(subcarrier);
    const SvdFactors &front = decomp.frontend_at(subcarrier, ue);
    if (ns > back.rank || ns > front.rank)
        throw RankError("build_precoders: " + std::to_string(ns) + " streams exceed channel rank (backend " +
                        std::to_string(back.rank) + ", frontend " + std::to_string(front.rank) + ")");

    const auto nsi = static_cast<Eigen::Index>(ns);
    const Eigen::Index r = back.singular.size();
    const double n0 = decomp.noise_power;

    // Strongest N_S singular vectors are the rightmost columns.
    const Matrix v_bs = back.v.rightCols(nsi);
    const Matrix u_bs = back.u.rightCols(nsi);
    const Matrix v_su = front.v.rightCols(nsi);

    Eigen::VectorXd sqrt_pb(nsi), f_gain(nsi);
    for (Eigen::Index n = 0; n < nsi; ++n)
    {
        const double sigma = back.singular(r - nsi + n);
        const double pb = p_bs[static_cast<std::size_t>(n)];
        sqrt_pb(n) = std::sqrt(pb);
        f_gain(n) = std::sqrt(p_sudas[static_cast<std::size_t>(n)] / (sigma * sigma * pb + n0));
    }

    PrecoderPair pair;
    pair.bs_precoder = v_bs * sqrt_pb.cast<cd>().asDiagonal();
    pair.sudas_matrix = v_su * f_gain.cast<cd>().asDiagonal() * u_bs.adjoint();
    return pair;
}

EffectiveChannel effective_channel(const PrecoderPair &pair, const Matrix &backend, const Vector &frontend_diag,
                                   double noise_power)
{
    const Eigen::Index m = backend.rows();
    if (pair.sudas_matrix.rows() != m || pair.sudas_matrix.cols() != m || frontend_diag.size() != m ||
        pair.bs_precoder.rows() != backend.cols())
        throw DomainError("effective_channel: shape mismatch");

    const Matrix hf = frontend_diag.asDiagonal() * pair.sudas_matrix;
    EffectiveChannel eff;
    eff.gamma = hf * backend * pair.bs_precoder;
    eff.theta = noise_power * (hf * hf.adjoint() + Matrix::Identity(m, m));
    return eff;
}

EffectiveChannel effective_channel(const PrecoderPair &pair, const ChannelRealization &channel,
                                   std::size_t subcarrier, std::size_t ue)
{
    return effective_channel(pair, channel.backend_at(subcarrier), channel.frontend(subcarrier, ue),
                             channel.noise_power);
}

Matrix mse_matrix(const EffectiveChannel &eff)
{
    const Eigen::Index ns = eff.gamma.cols();
    const auto theta = factor_hpd(eff.theta, "mse_matrix(theta)");
    const Matrix info = Matrix::Identity(ns, ns) + eff.gamma.adjoint() * theta.solve(eff.gamma);
    const auto inner = factor_hpd(info, "mse_matrix");
    Matrix e = inner.solve(Matrix::Identity(ns, ns));
    return 0.5 * (e + e.adjoint());
}

Matrix mse_matrix_lemma_form(const EffectiveChannel &eff)
{
    const Eigen::Index ns = eff.gamma.cols();
    const auto outer = factor_hpd(eff.gamma * eff.gamma.adjoint() + eff.theta, "mse_matrix_lemma_form");
    Matrix e = Matrix::Identity(ns, ns) - eff.gamma.adjoint() * outer.solve(eff.gamma);
    return 0.5 * (e + e.adjoint());
}

Matrix mmse_receiver(const EffectiveChannel &eff)
{
    const auto outer = factor_hpd(eff.gamma * eff.gamma.adjoint() + eff.theta, "mmse_receiver");
    return outer.solve(eff.gamma);
}

double exact_rate(const Matrix &mse)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mse + mse.adjoint()), Eigen::EigenvaluesOnly);
    double rate = 0.0;
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    {
        const double mu = es.eigenvalues()(j);
        if (!(mu > 0.0))
            throw DomainError("exact_rate: MSE matrix has a non-positive eigenvalue");
        rate -= std::log2(mu);
    }
    // Round-off can push E = I slightly above 1.
    return rate < 0.0 ? 0.0 : rate;
}

double sudas_transmit_power(const PrecoderPair &pair, const Matrix &backend, double noise_power)
{
    const Eigen::Index m = backend.rows();
    const Matrix hp = backend * pair.bs_precoder;
    const Matrix g =
        pair.sudas_matrix * (hp * hp.adjoint() + noise_power * Matrix::Identity(m, m)) * pair.sudas_matrix.adjoint();
    return g.trace().real();
}

double sudas_transmit_power(const PrecoderPair &pair, const ChannelRealization &channel, std::size_t subcarrier)
{
    return sudas_transmit_power(pair, channel.backend_at(subcarrier), channel.noise_power);
}

std::vector<StreamMse> empirical_mse_check(const PrecoderPair &pair, const ChannelRealization &channel,
                                           std::size_t subcarrier, std::size_t ue, const Matrix &receiver,
                                           std::size_t n_samples, std::uint64_t seed)
{
    if (n_samples < 10000)
        throw DomainError("empirical_mse_check: n_samples must be >= 10000");

    const Matrix &hb = channel.backend_at(subcarrier);
    const Vector &hf = channel.frontend(subcarrier, ue);
    const Eigen::Index m = hb.rows();
    const Eigen::Index ns = pair.bs_precoder.cols();
    if (receiver.rows() != m || receiver.cols() != ns)
        throw DomainError("empirical_mse_check: receiver shape mismatch");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto cscg = [&](Eigen::Index rows, Eigen::Index cols, double variance) {
        const double s = std::sqrt(variance / 2.0);
        Matrix out(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                out(r, c) = cd(s * re, s * im);
            }
        return out;
    };

    const double n0 = channel.noise_power;
    const Matrix forward = hf.asDiagonal() * pair.sudas_matrix;
    const Matrix wh = receiver.adjoint();

    std::vector<double> sum(static_cast<std::size_t>(ns), 0.0), sum_sq(static_cast<std::size_t>(ns), 0.0);
    const std::size_t block = 4096;
    for (std::size_t done = 0; done < n_samples; done += block)
    {
        const auto cols = static_cast<Eigen::Index>(std::min(block, n_samples - done));
        const Matrix d = cscg(ns, cols, 1.0);
        const Matrix z = cscg(m, cols, n0);
        const Matrix noise_ue = cscg(m, cols, n0);
        const Matrix y = forward * (hb * pair.bs_precoder * d + z) + noise_ue;
        const Matrix err = wh * y - d;
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index j = 0; j < ns; ++j)
            {
                const double e = std::norm(err(j, c));
                sum[static_cast<std::size_t>(j)] += e;
                sum_sq[static_cast<std::size_t>(j)] += e * e;
            }
    }

    std::vector<StreamMse> out(static_cast<std::size_t>(ns));
    const auto n = static_cast<double>(n_samples);
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        const double mean = sum[j] / n;
        const double var = (sum_sq[j] - n * mean * mean) / (n - 1.0);
        out[j].mse = mean;
        out[j].std_error = std::sqrt(std::max(var, 0.0) / n);
    }
    return out;
}

} // namespace sudas
