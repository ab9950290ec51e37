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

#include "sudas/channel.hpp"
#include "sudas/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sudas
{

Matrix ChannelRealization::frontend_matrix(std::size_t i, std::size_t k) const
{
    return frontend(i, k).asDiagonal();
}

ChannelRealization make_zero_channels(const SystemConfig &cfg)
{
    ChannelRealization ch;
    ch.n_tx_bs = cfg.n_tx_bs;
    ch.n_sudacs = cfg.n_sudacs;
    ch.n_ues = cfg.n_ues;
    ch.n_subcarriers = cfg.n_subcarriers;
    ch.noise_power = cfg.noise_power;

    const auto m = static_cast<Eigen::Index>(cfg.n_sudacs);
    const auto nt = static_cast<Eigen::Index>(cfg.n_tx_bs);
    ch.backend.assign(cfg.n_subcarriers, Matrix::Zero(m, nt));
    ch.frontend_diag.assign(cfg.n_subcarriers * cfg.n_ues, Vector::Zero(m));
    ch.direct_rows.assign(cfg.n_subcarriers * cfg.n_ues, RowVector::Zero(nt));
    return ch;
}

ChannelRealization generate_channels(const SystemConfig &cfg, std::uint64_t seed)
{
    validate(cfg);
    ChannelRealization ch = make_zero_channels(cfg);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // CN(0, g): real and imaginary parts each carry g / 2.
    auto draw = [&](double gain) {
        const double s = std::sqrt(gain / 2.0);
        const double re = normal(rng);
        const double im = normal(rng);
        return std::complex<double>(s * re, s * im);
    };

    // Fixed draw order: all backend matrices (column-major), then frontend diagonals, then direct rows.
    for (auto &h : ch.backend)
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            for (Eigen::Index r = 0; r < h.rows(); ++r)
                h(r, c) = draw(cfg.backend_gain);
    for (auto &d : ch.frontend_diag)
        for (Eigen::Index r = 0; r < d.size(); ++r)
            d(r) = draw(cfg.frontend_gain);
    for (auto &row : ch.direct_rows)
        for (Eigen::Index c = 0; c < row.size(); ++c)
            row(c) = draw(cfg.direct_gain);
    return ch;
}

Eigen::MatrixXd SvdFactors::singular_matrix() const
{
    const Eigen::Index rows = u.rows();
    const Eigen::Index cols = v.rows();
    const Eigen::Index r = singular.size();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index j = 0; j < r; ++j)
        s(rows - r + j, cols - r + j) = singular(j);
    return s;
}

Matrix SvdFactors::reconstruct() const
{
    return u * singular_matrix().cast<std::complex<double>>() * v.adjoint();
}

namespace
{
std::size_t numerical_rank(const RealVector &ascending)
{
    if (ascending.size() == 0)
        return 0;
    const double top = ascending(ascending.size() - 1);
    if (!(top > 0.0))
        return 0;
    std::size_t rank = 0;
    for (Eigen::Index j = 0; j < ascending.size(); ++j)
        if (ascending(j) > kRankTolerance * top)
            ++rank;
    return rank;
}

void require_finite(const Eigen::Ref<const Matrix> &m, const char *what)
{
    if (!m.allFinite())
        throw NumericalError(std::string("decompose: non-finite entry in ") + what + " channel");
}
} // namespace

SvdFactors svd_ascending(const Matrix &h)
{
    const Eigen::Index rows = h.rows();
    const Eigen::Index cols = h.cols();
    const Eigen::Index r = std::min(rows, cols);

    Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix &ue = svd.matrixU();
    const Matrix &ve = svd.matrixV();
    const RealVector &se = svd.singularValues(); // descending

    // Eigen's null-space columns go first, then the singular columns in reverse order.
    SvdFactors out;
    out.u.resize(rows, rows);
    out.v.resize(cols, cols);
    out.singular.resize(r);
    for (Eigen::Index c = 0; c < rows - r; ++c)
        out.u.col(c) = ue.col(r + c);
    for (Eigen::Index c = 0; c < cols - r; ++c)
        out.v.col(c) = ve.col(r + c);
    for (Eigen::Index j = 0; j < r; ++j)
    {
        out.u.col(rows - r + j) = ue.col(r - 1 - j);
        out.v.col(cols - r + j) = ve.col(r - 1 - j);
        out.singular(j) = se(r - 1 - j);
    }
    out.rank = numerical_rank(out.singular);
    return out;
}

SvdFactors svd_diagonal(const Vector &d)
{
    const Eigen::Index m = d.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(d(a)) < std::abs(d(b)); });

    SvdFactors out;
    out.u = Matrix::Zero(m, m);
    out.v = Matrix::Zero(m, m);
    out.singular.resize(m);
    for (Eigen::Index j = 0; j < m; ++j)
    {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        const double mag = std::abs(d(src));
        out.singular(j) = mag;
        out.v(src, j) = 1.0;
        out.u(src, j) = mag > 0.0 ? d(src) / mag : std::complex<double>(1.0, 0.0);
    }
    out.rank = numerical_rank(out.singular);
    return out;
}

double SpatialDecomposition::backend_stream_cnr(std::size_t i, std::size_t n, std::size_t n_streams) const
{
    const auto r = static_cast<std::size_t>(backend_cnr.cols());
    return backend_cnr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r - n_streams + n));
}

double SpatialDecomposition::frontend_stream_cnr(std::size_t i, std::size_t k, std::size_t n,
                                                 std::size_t n_streams) const
{
    return frontend_cnr(static_cast<Eigen::Index>(i * n_ues + k),
                        static_cast<Eigen::Index>(n_sudacs - n_streams + n));
}

SpatialDecomposition decompose(const ChannelRealization &channel)
{
    if (!(channel.noise_power > 0.0) || !std::isfinite(channel.noise_power))
        throw NumericalError("decompose: noise power must be finite and > 0");

    SpatialDecomposition out;
    out.n_tx_bs = channel.n_tx_bs;
    out.n_sudacs = channel.n_sudacs;
    out.n_ues = channel.n_ues;
    out.n_subcarriers = channel.n_subcarriers;
    out.noise_power = channel.noise_power;

    const auto r = static_cast<Eigen::Index>(std::min(channel.n_tx_bs, channel.n_sudacs));
    const auto m = static_cast<Eigen::Index>(channel.n_sudacs);
    out.backend_cnr.resize(static_cast<Eigen::Index>(channel.n_subcarriers), r);
    out.frontend_cnr.resize(static_cast<Eigen::Index>(channel.n_subcarriers * channel.n_ues), m);

    out.backend.reserve(channel.n_subcarriers);
    for (std::size_t i = 0; i < channel.n_subcarriers; ++i)
    {
        const Matrix &h = channel.backend_at(i);
        if (h.rows() != m || h.cols() != static_cast<Eigen::Index>(channel.n_tx_bs))
            throw DomainError("decompose: backend matrix has wrong shape");
        require_finite(h, "backend");
        out.backend.push_back(svd_ascending(h));
        out.backend_cnr.row(static_cast<Eigen::Index>(i)) =
            out.backend.back().singular.array().square().transpose() / channel.noise_power;
    }

    out.frontend.reserve(channel.n_subcarriers * channel.n_ues);
    for (std::size_t i = 0; i < channel.n_subcarriers; ++i)
        for (std::size_t k = 0; k < channel.n_ues; ++k)
        {
            const Vector &d = channel.frontend(i, k);
            if (d.size() != m)
                throw DomainError("decompose: frontend diagonal has wrong length");
            require_finite(d, "frontend");
            out.frontend.push_back(svd_diagonal(d));
            out.frontend_cnr.row(static_cast<Eigen::Index>(i * channel.n_ues + k)) =
                out.frontend.back().singular.array().square().transpose() / channel.noise_power;
        }
    return out;
}

StreamGains stream_gains(const SpatialDecomposition &decomp, std::size_t n_streams)
{
    if (n_streams > std::min(decomp.n_tx_bs, decomp.n_sudacs))
        throw RankError("stream_gains: n_streams exceeds min(n_tx_bs, n_sudacs)");
    StreamGains g;
    g.n_subcarriers = decomp.n_subcarriers;
    g.n_ues = decomp.n_ues;
    g.n_streams = n_streams;
    g.backend.resize(decomp.n_subcarriers * n_streams);
    g.frontend.resize(decomp.n_subcarriers * decomp.n_ues * n_streams);
    for (std::size_t i = 0; i < decomp.n_subcarriers; ++i)
    {
        for (std::size_t n = 0; n < n_streams; ++n)
            g.backend[i * n_streams + n] = decomp.backend_stream_cnr(i, n, n_streams);
        for (std::size_t k = 0; k < decomp.n_ues; ++k)
            for (std::size_t n = 0; n < n_streams; ++n)
                g.frontend[(i * decomp.n_ues + k) * n_streams + n] = decomp.frontend_stream_cnr(i, k, n, n_streams);
    }
    return g;
}

} // namespace sudas
