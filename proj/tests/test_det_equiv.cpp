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

#include "risre/det_equiv.hpp"
#include "risre/metrics.hpp"
#include "support/oracles.hpp"

using namespace risre;

namespace {

PowerAllocation scalar_alloc(double lambda)
{
    PowerAllocation a;
    a.stream_power = {arma::vec{lambda}};
    a.basis = {arma::cx_mat(1, 1, arma::fill::ones)};
    return a;
}

// Residual of one more substitution sweep on the converged auxiliaries.
double resubstitution_residual(const ChannelModel &model, const arma::cx_vec &phi,
                               const PowerAllocation &alloc, double sigma2,
                               const DeState &st)
{
    const arma::uword m = model.bs_antennas();
    arma::cx_mat load(m, m, arma::fill::zeros);
    std::vector<arma::cx_mat> basis(model.num_uts());
    for (arma::uword k = 0; k < model.num_uts(); ++k) {
        basis[k] = model.ris_to_bs * arma::diagmat(phi) * model.rx_basis[k];
        load += basis[k] *
                arma::diagmat(model.coupling[k] * st.stream_power[k] / sigma2) *
                basis[k].t();
    }
    load.diag() += 1.0;
    double res = 0.0;
    for (arma::uword k = 0; k < model.num_uts(); ++k) {
        const arma::cx_mat x = arma::solve(load, basis[k]);
        const arma::vec gain =
            model.coupling[k].t() *
            (arma::real(arma::sum(arma::conj(basis[k]) % x, 0)).t() / sigma2);
        const arma::vec next =
            alloc.stream_power[k] / (1.0 + gain % alloc.stream_power[k]);
        res = std::max(res, arma::abs(next - st.stream_power[k]).max());
    }
    return res;
}

} // namespace

TEST_CASE("scalar fixed point hits the closed-form root")
{
    const ChannelModel model = oracles::scalar_model();
    const arma::cx_vec phi(1, arma::fill::ones);
    const DeState st = de_fixed_point(model, phi, scalar_alloc(1.0), 1.0, 1e-12);

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(st.elem_gain[0](0) == doctest::Approx(golden).epsilon(1e-8));
    CHECK(st.stream_power[0](0) == doctest::Approx(golden).epsilon(1e-8));

    // 2 log2(1 + x) - x^2/ln 2 at the golden root.
    const double se = 2.0 * std::log2(1.0 + golden) -
                      golden * golden / std::log(2.0);
    CHECK(st.se_bits == doctest::Approx(se).epsilon(1e-9));
    CHECK(se == doctest::Approx(0.8374).epsilon(2e-4));
}

TEST_CASE("zero power decouples the fixed point")
{
    SystemConfig cfg;
    cfg.num_uts = 2;
    cfg.ut_antennas = {2, 2};
    cfg.bs_antennas = 3;
    cfg.ris_elements = 5;
    cfg.amp_inefficiency = arma::vec(2, arma::fill::value(2.0));
    cfg.circuit_power_w = arma::vec(2, arma::fill::value(0.01));
    cfg.pmax_w = arma::vec(2, arma::fill::value(0.1));
    const ChannelModel model = generate_channel(cfg, 12);

    PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    for (auto &lam : alloc.stream_power)
        lam.zeros();
    arma::cx_vec phi(cfg.ris_elements);
    for (arma::uword i = 0; i < phi.n_elem; ++i)
        phi(i) = std::polar(1.0, 0.7 * static_cast<double>(i));

    const double sigma2 = 1e-12;
    const DeState st = de_fixed_point(model, phi, alloc, sigma2, 1e-12);
    CHECK(st.se_bits == 0.0);
    for (arma::uword k = 0; k < 2; ++k) {
        CHECK(arma::abs(st.stream_power[k]).max() == 0.0);
        const arma::cx_mat basis =
            model.ris_to_bs * arma::diagmat(phi) * model.rx_basis[k];
        // With a vanished load the gain is the plain column energy over noise.
        const arma::vec expected =
            arma::sum(arma::square(arma::abs(basis)), 0).t() / sigma2;
        CHECK(arma::abs(st.elem_gain[k] - expected).max() <=
              1e-10 * expected.max());
    }
}

TEST_CASE("converged auxiliaries reproduce themselves")
{
    SystemConfig cfg;
    const ChannelModel model = generate_channel(cfg, 23);
    const PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    const arma::cx_vec phi(cfg.ris_elements, arma::fill::ones);
    const double eps = 1e-9;
    const DeState st = de_fixed_point(model, phi, alloc, cfg.noise_w, eps);
    CHECK(resubstitution_residual(model, phi, alloc, cfg.noise_w, st) <= eps);
}

TEST_CASE("asymptotic rate is monotone in stream power")
{
    SystemConfig cfg;
    cfg.num_uts = 2;
    cfg.ut_antennas = {2, 2};
    cfg.bs_antennas = 4;
    cfg.ris_elements = 6;
    cfg.amp_inefficiency = arma::vec(2, arma::fill::value(2.0));
    cfg.circuit_power_w = arma::vec(2, arma::fill::value(0.01));
    cfg.pmax_w = arma::vec(2, arma::fill::value(0.1));
    cfg.noise_w = 1e-12;
    const ChannelModel model = generate_channel(cfg, 31);

    PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    const arma::cx_vec phi(cfg.ris_elements, arma::fill::ones);
    double prev = de_fixed_point(model, phi, alloc, cfg.noise_w, 1e-11).se_bits;
    for (int i = 0; i < 4; ++i) {
        alloc.stream_power[i % 2](i / 2) += 0.01;
        const double next =
            de_fixed_point(model, phi, alloc, cfg.noise_w, 1e-11).se_bits;
        CHECK(next >= prev - 1e-9);
        prev = next;
    }
}

TEST_CASE("transmit bases never enter the fixed point")
{
    SystemConfig cfg;
    const ChannelModel model = generate_channel(cfg, 77);
    ChannelModel rotated = model;
    risre::Substream s(risre::derive_key({77, 0xabcdull}));
    for (auto &v : rotated.tx_basis) {
        arma::cx_mat q, r;
        arma::qr(q, r, oracles::random_cx_mat(s, v.n_rows, v.n_cols));
        v = q;
    }
    const PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    const arma::cx_vec phi(cfg.ris_elements, arma::fill::ones);
    const DeState a = de_fixed_point(model, phi, alloc, cfg.noise_w, 1e-10);
    const DeState b = de_fixed_point(rotated, phi, alloc, cfg.noise_w, 1e-10);
    CHECK(a.se_bits == b.se_bits);
}

TEST_CASE("asymptotic rate tracks Monte-Carlo at the default scale")
{
    SystemConfig cfg; // K=4, N_k=2, M=8, N_R=32
    const ChannelModel model = generate_channel(cfg, 3);
    const PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    const PhaseVector phase{arma::cx_vec(cfg.ris_elements, arma::fill::ones),
                            cfg.constraint()};
    const DeState st = de_fixed_point(model, phase.phi, alloc, cfg.noise_w, 1e-9);
    const double mc =
        ergodic_se_mc(model, phase, alloc, cfg.noise_w, 2000, 1234);
    CHECK(std::abs(st.se_bits - mc) / mc <= 0.05);
}

TEST_CASE("non-convergence raises with the last residual")
{
    SystemConfig cfg;
    const ChannelModel model = generate_channel(cfg, 8);
    const PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    const arma::cx_vec phi(cfg.ris_elements, arma::fill::ones);
    try {
        de_fixed_point(model, phi, alloc, cfg.noise_w, 1e-13, 1);
        FAIL("expected SolverError");
    } catch (const SolverError &e) {
        CHECK(e.residual() > 0.0);
    }
}
