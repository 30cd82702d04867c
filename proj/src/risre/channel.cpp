// SPDX-License-Identifier: Apache-2.0
//
// risre - resource-efficiency optimization for RIS-aided multi-user MIMO uplinks
// Copyright (C) 2026 risre developers
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

#include "risre/channel.hpp"

#include "risre/rng.hpp"

namespace risre {

// Per-entry variance of the RIS-to-BS link (-120 dB composite path loss).
static constexpr double k_ris_bs_entry_var = 1e-12;

static arma::mat exp_correlation(arma::uword n, double rho)
{
    arma::mat r(n, n);
    for (arma::uword i = 0; i < n; ++i)
        for (arma::uword j = 0; j < n; ++j)
            r(i, j) = std::pow(rho, static_cast<double>(i > j ? i - j : j - i));
    return r;
}

ChannelModel generate_channel(const SystemConfig &cfg, std::uint64_t seed)
{
    cfg.validate();

    const arma::uword m = cfg.bs_antennas;
    const arma::uword nr = cfg.ris_elements;

    ChannelModel model;
    model.ris_to_bs.set_size(m, nr);
    {
        Substream s(derive_key({seed, tag::ris_bs_link}));
        const double scale = std::sqrt(k_ris_bs_entry_var / 2.0);
        for (arma::uword c = 0; c < nr; ++c)
            for (arma::uword r = 0; r < m; ++r)
                model.ris_to_bs(r, c) = scale * s.gauss_pair();
    }

    model.rx_basis.resize(cfg.num_uts);
    model.tx_basis.resize(cfg.num_uts);
    model.coupling.resize(cfg.num_uts);
    for (arma::uword k = 0; k < cfg.num_uts; ++k) {
        const arma::uword nk = cfg.ut_antennas[k];
        Substream s(derive_key({seed, tag::ut_correlation, k}));
        const double rho_rx = s.uniform(cfg.rho_min, cfg.rho_max);
        const double rho_tx = s.uniform(cfg.rho_min, cfg.rho_max);

        arma::vec w_rx, w_tx;
        arma::mat u_rx, u_tx;
        if (!arma::eig_sym(w_rx, u_rx, exp_correlation(nr, rho_rx)) ||
            !arma::eig_sym(w_tx, u_tx, exp_correlation(nk, rho_tx)))
            throw SolverError("generate_channel: correlation eigendecomposition failed");

        model.rx_basis[k] = arma::conv_to<arma::cx_mat>::from(u_rx);
        model.tx_basis[k] = arma::conv_to<arma::cx_mat>::from(u_tx);

        arma::mat omega = arma::clamp(w_rx, 0.0, arma::datum::inf) *
                          arma::clamp(w_tx, 0.0, arma::datum::inf).t();
        const double total = arma::accu(omega);
        if (total > 0.0)
            omega *= static_cast<double>(nr * nk) / total;
        model.coupling[k] = omega;
    }
    return model;
}

ChannelDraw draw_h2(const ChannelModel &model, std::uint64_t seed,
                    std::uint64_t draw_index)
{
    ChannelDraw draw(model.num_uts());
    for (arma::uword k = 0; k < model.num_uts(); ++k) {
        const arma::mat &omega = model.coupling[k];
        Substream s(derive_key({seed, tag::channel_draw, draw_index, k}));
        arma::cx_mat h(omega.n_rows, omega.n_cols);
        for (arma::uword c = 0; c < omega.n_cols; ++c)
            for (arma::uword r = 0; r < omega.n_rows; ++r)
                h(r, c) = std::sqrt(omega(r, c) / 2.0) * s.gauss_pair();
        draw[k] = std::move(h);
    }
    return draw;
}

arma::cx_mat effective_channel(const ChannelModel &model, const arma::cx_vec &phi,
                               const ChannelDraw &draw, arma::uword k)
{
    if (k >= model.num_uts() || k >= draw.size())
        throw std::invalid_argument("effective_channel: UT index out of range");
    if (phi.n_elem != model.ris_elements())
        throw std::invalid_argument("effective_channel: phase vector length mismatch");
    const arma::cx_mat &w = draw[k];
    if (w.n_rows != model.rx_basis[k].n_cols || w.n_cols != model.tx_basis[k].n_rows)
        throw std::invalid_argument("effective_channel: draw dimensions mismatch");
    return model.ris_to_bs * arma::diagmat(phi) * model.rx_basis[k] * w *
           model.tx_basis[k].t();
}

} // namespace risre
