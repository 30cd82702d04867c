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

#include <doctest.h>

#include "risre/channel.hpp"
#include "support/oracles.hpp"

using namespace risre;

namespace {

SystemConfig small_cfg()
{
    SystemConfig cfg;
    cfg.num_uts = 2;
    cfg.ut_antennas = {2, 3};
    cfg.bs_antennas = 4;
    cfg.ris_elements = 6;
    cfg.amp_inefficiency = arma::vec(2, arma::fill::value(1.0 / 0.3));
    cfg.circuit_power_w = arma::vec(2, arma::fill::value(0.01));
    cfg.pmax_w = arma::vec(2, arma::fill::value(0.1));
    return cfg;
}

} // namespace

TEST_CASE("dbm conversion")
{
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(dbm_to_watt(-96.0) == doctest::Approx(2.512e-13).epsilon(1e-3));
    CHECK(watt_to_dbm(dbm_to_watt(17.0)) == doctest::Approx(17.0).epsilon(1e-12));
    CHECK_THROWS_AS(dbm_to_watt(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(watt_to_dbm(0.0), std::invalid_argument);
}

TEST_CASE("identity correlations give flat coupling")
{
    SystemConfig cfg = small_cfg();
    cfg.rho_min = 0.0;
    cfg.rho_max = 0.0;
    const ChannelModel model = generate_channel(cfg, 3);
    for (arma::uword k = 0; k < cfg.num_uts; ++k) {
        const arma::uword nr = cfg.ris_elements, nk = cfg.ut_antennas[k];
        CHECK(arma::norm(model.rx_basis[k] - arma::eye<arma::cx_mat>(nr, nr), "fro") <=
              1e-10);
        CHECK(arma::norm(model.tx_basis[k] - arma::eye<arma::cx_mat>(nk, nk), "fro") <=
              1e-10);
        CHECK(arma::abs(model.coupling[k] - 1.0).max() <= 1e-12);
    }
}

TEST_CASE("bases are unitary and coupling is normalized")
{
    const SystemConfig cfg = small_cfg();
    const ChannelModel model = generate_channel(cfg, 17);
    for (arma::uword k = 0; k < cfg.num_uts; ++k) {
        const arma::uword nr = cfg.ris_elements, nk = cfg.ut_antennas[k];
        CHECK(arma::norm(model.rx_basis[k].t() * model.rx_basis[k] -
                             arma::eye<arma::cx_mat>(nr, nr),
                         "fro") <= 1e-10);
        CHECK(arma::norm(model.tx_basis[k].t() * model.tx_basis[k] -
                             arma::eye<arma::cx_mat>(nk, nk),
                         "fro") <= 1e-10);
        CHECK(model.coupling[k].min() >= 0.0);
        const double total = arma::accu(model.coupling[k]);
        CHECK(total ==
              doctest::Approx(static_cast<double>(nr * nk)).epsilon(1e-12));
    }
}

TEST_CASE("eigendecomposition reconstructs the exponential correlation")
{
    const SystemConfig cfg = small_cfg();
    const ChannelModel model = generate_channel(cfg, 99);
    for (arma::uword k = 0; k < cfg.num_uts; ++k) {
        const arma::uword nr = cfg.ris_elements;
        const arma::uword nk = cfg.ut_antennas[k];
        // Receive-side eigenvalues from the coupling row sums.
        const arma::vec d_rx =
            arma::sum(model.coupling[k], 1) / static_cast<double>(nk);
        const arma::cx_mat rec =
            model.rx_basis[k] * arma::diagmat(d_rx) * model.rx_basis[k].t();
        CHECK(arma::norm(rec - rec.t(), "fro") <= 1e-10);
        const double rho = std::real(rec(0, 1));
        for (arma::uword i = 0; i < nr; ++i)
            for (arma::uword j = 0; j < nr; ++j)
                CHECK(std::real(rec(i, j)) ==
                      doctest::Approx(std::pow(rho, static_cast<double>(
                                                        i > j ? i - j : j - i)))
                          .epsilon(1e-8));
        arma::vec eigs;
        CHECK(arma::eig_sym(eigs, rec));
        CHECK(eigs.min() >= -1e-10);
    }
}

TEST_CASE("generation is deterministic")
{
    const SystemConfig cfg = small_cfg();
    const ChannelModel a = generate_channel(cfg, 5);
    const ChannelModel b = generate_channel(cfg, 5);
    CHECK(arma::norm(a.ris_to_bs - b.ris_to_bs, "fro") == 0.0);
    for (arma::uword k = 0; k < cfg.num_uts; ++k) {
        CHECK(arma::norm(a.rx_basis[k] - b.rx_basis[k], "fro") == 0.0);
        CHECK(arma::norm(a.coupling[k] - b.coupling[k], "fro") == 0.0);
    }
    const ChannelModel c = generate_channel(cfg, 6);
    CHECK(arma::norm(a.ris_to_bs - c.ris_to_bs, "fro") > 0.0);
}

TEST_CASE("degenerate dimensions are rejected")
{
    SystemConfig cfg = small_cfg();
    cfg.ris_elements = 0;
    CHECK_THROWS_AS(generate_channel(cfg, 1), std::invalid_argument);
}

TEST_CASE("draws follow the coupling variance profile")
{
    SystemConfig cfg = small_cfg();
    cfg.num_uts = 1;
    cfg.ut_antennas = {2};
    cfg.ris_elements = 4;
    cfg.amp_inefficiency = arma::vec(1, arma::fill::value(1.0 / 0.3));
    cfg.circuit_power_w = arma::vec(1, arma::fill::value(0.01));
    cfg.pmax_w = arma::vec(1, arma::fill::value(0.1));
    const ChannelModel model = generate_channel(cfg, 11);

    const std::uint64_t n_draws = 100000;
    arma::mat second_moment(4, 2, arma::fill::zeros);
    for (std::uint64_t d = 0; d < n_draws; ++d) {
        const ChannelDraw draw = draw_h2(model, 7, d);
        second_moment += arma::square(arma::abs(draw[0]));
    }
    second_moment /= static_cast<double>(n_draws);
    const arma::mat rel =
        arma::abs(second_moment - model.coupling[0]) / model.coupling[0];
    CHECK(rel.max() <= 0.02);
}

TEST_CASE("zero coupling draws zero")
{
    ChannelModel model = oracles::scalar_model();
    model.coupling[0].zeros();
    const ChannelDraw draw = draw_h2(model, 1, 0);
    CHECK(std::abs(draw[0](0, 0)) == 0.0);
}

TEST_CASE("draws are deterministic per index and differ across indices")
{
    const SystemConfig cfg = small_cfg();
    const ChannelModel model = generate_channel(cfg, 2);
    const ChannelDraw a = draw_h2(model, 42, 3);
    const ChannelDraw b = draw_h2(model, 42, 3);
    const ChannelDraw c = draw_h2(model, 42, 4);
    CHECK(arma::norm(a[0] - b[0], "fro") == 0.0);
    CHECK(arma::norm(a[1] - b[1], "fro") == 0.0);
    CHECK(arma::norm(a[0] - c[0], "fro") > 0.0);
}

TEST_CASE("effective channel: zero phases annihilate")
{
    const SystemConfig cfg = small_cfg();
    const ChannelModel model = generate_channel(cfg, 8);
    const ChannelDraw draw = draw_h2(model, 8, 0);
    const arma::cx_vec phi(cfg.ris_elements, arma::fill::zeros);
    const arma::cx_mat g = effective_channel(model, phi, draw, 0);
    CHECK(arma::norm(g, "fro") == 0.0);
}

TEST_CASE("effective channel: scalar identity chain")
{
    const ChannelModel model = oracles::scalar_model();
    const ChannelDraw draw = draw_h2(model, 21, 0);
    const arma::cx_vec phi(1, arma::fill::ones);
    const arma::cx_mat g = effective_channel(model, phi, draw, 0);
    CHECK(std::abs(g(0, 0) - draw[0](0, 0)) == 0.0);
}

TEST_CASE("effective channel: transmit basis only rotates singular values")
{
    const SystemConfig cfg = small_cfg();
    ChannelModel model = generate_channel(cfg, 19);
    const ChannelDraw draw = draw_h2(model, 19, 0);
    arma::cx_vec phi(cfg.ris_elements);
    for (arma::uword i = 0; i < phi.n_elem; ++i)
        phi(i) = std::polar(1.0, 0.3 * static_cast<double>(i));

    const arma::cx_mat g1 = effective_channel(model, phi, draw, 1);
    model.tx_basis[1] =
        arma::eye<arma::cx_mat>(cfg.ut_antennas[1], cfg.ut_antennas[1]);
    const arma::cx_mat g2 = effective_channel(model, phi, draw, 1);

    const arma::vec s1 = arma::svd(g1);
    const arma::vec s2 = arma::svd(g2);
    CHECK(arma::abs(s1 - s2).max() <= 1e-10 * std::max(1.0, s1.max()));
}

TEST_CASE("effective channel rejects dimension mismatch")
{
    const SystemConfig cfg = small_cfg();
    const ChannelModel model = generate_channel(cfg, 1);
    const ChannelDraw draw = draw_h2(model, 1, 0);
    const arma::cx_vec bad_phi(cfg.ris_elements + 1, arma::fill::ones);
    CHECK_THROWS_AS(effective_channel(model, bad_phi, draw, 0),
                    std::invalid_argument);
    const arma::cx_vec phi(cfg.ris_elements, arma::fill::ones);
    CHECK_THROWS_AS(effective_channel(model, phi, draw, 5), std::invalid_argument);
}
