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

#ifndef risre_channel_H
#define risre_channel_H

#include <armadillo>
#include <cstdint>
#include <vector>

#include "risre/types.hpp"

namespace risre {

// Deterministic channel state. The RIS-to-BS link is known instantaneously;
// the fast-fading UT-to-RIS links are known only through their per-UT
// eigenbases and the coupling (per-entry variance) matrices.
//
// UT-to-RIS channel model: H_{2,k} = rx_basis_k * W_k * tx_basis_k^H with
// W_k random, entry (n,m) zero-mean complex Gaussian of variance
// coupling_k(n,m).
struct ChannelModel {
    arma::cx_mat ris_to_bs;               // M x N_R
    std::vector<arma::cx_mat> rx_basis;   // per-UT unitary N_R x N_R
    std::vector<arma::cx_mat> tx_basis;   // per-UT unitary N_k x N_k
    std::vector<arma::mat> coupling;      // per-UT nonnegative N_R x N_k

    arma::uword num_uts() const { return rx_basis.size(); }
    arma::uword bs_antennas() const { return ris_to_bs.n_rows; }
    arma::uword ris_elements() const { return ris_to_bs.n_cols; }
};

// One random realization of the inner UT-to-RIS matrices (all UTs).
using ChannelDraw = std::vector<arma::cx_mat>;

// Synthetic jointly correlated channel. The composite -120 dB path loss is
// placed entirely on the RIS-to-BS link (per-entry variance 1e-12); the
// coupling matrices are normalized to unit average per-entry energy.
// Per-UT correlation exponents are drawn from [cfg.rho_min, cfg.rho_max).
// Deterministic given (cfg, seed).
ChannelModel generate_channel(const SystemConfig &cfg, std::uint64_t seed);

// Random inner-matrix realization from the substream keyed by
// (seed, draw_index, k); draws with distinct indices are independent.
ChannelDraw draw_h2(const ChannelModel &model, std::uint64_t seed,
                    std::uint64_t draw_index);

// ris_to_bs * diag(phi) * rx_basis_k * draw_k * tx_basis_k^H  (M x N_k)
arma::cx_mat effective_channel(const ChannelModel &model, const arma::cx_vec &phi,
                               const ChannelDraw &draw, arma::uword k);

} // namespace risre

#endif
