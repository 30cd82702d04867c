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

PhaseVector scalar_phase()
{
    return {arma::cx_vec(1, arma::fill::ones), {PhaseMode::cps, 0}};
}

} // namespace

TEST_CASE("mc rate is zero for zero power or dead channel")
{
    const ChannelModel model = oracles::scalar_model();
    CHECK(ergodic_se_mc(model, scalar_phase(), scalar_alloc(0.0), 1.0, 50, 1) ==
          0.0);

    ChannelModel dead = model;
    dead.coupling[0].zeros();
    CHECK(ergodic_se_mc(dead, scalar_phase(), scalar_alloc(1.0), 1.0, 50, 1) ==
          0.0);

    CHECK_THROWS_AS(
        ergodic_se_mc(model, scalar_phase(), scalar_alloc(1.0), 1.0, 0, 1),
        std::invalid_argument);
}

TEST_CASE("mc rate matches the exponential-integral value in the scalar case")
{
    // Rayleigh scalar link at unit SNR; oracle by quadrature.
    const double expected = oracles::exp_rate_quadrature();
    CHECK(expected == doctest::Approx(0.8603474).epsilon(2e-6));

    const ChannelModel model = oracles::scalar_model();
    const double mc =
        ergodic_se_mc(model, scalar_phase(), scalar_alloc(1.0), 1.0, 1000000, 5);
    CHECK(mc == doctest::Approx(expected).epsilon(0.004));
}

TEST_CASE("mc estimate is monotone in stream power under common draws")
{
    SystemConfig cfg;
    cfg.num_uts = 2;
    cfg.ut_antennas = {2, 2};
    cfg.bs_antennas = 3;
    cfg.ris_elements = 4;
    cfg.amp_inefficiency = arma::vec(2, arma::fill::value(2.0));
    cfg.circuit_power_w = arma::vec(2, arma::fill::value(0.01));
    cfg.pmax_w = arma::vec(2, arma::fill::value(0.1));
    const ChannelModel model = generate_channel(cfg, 4);

    PowerAllocation alloc = equal_power_allocation(cfg, model.tx_basis);
    const PhaseVector phase{arma::cx_vec(cfg.ris_elements, arma::fill::ones),
                            {PhaseMode::cps, 0}};
    const double base = ergodic_se_mc(model, phase, alloc, 1e-12, 200, 9);
    for (int rep = 0; rep < 4; ++rep) {
        alloc.stream_power[rep % 2](rep / 2) += 0.02;
        const double bumped = ergodic_se_mc(model, phase, alloc, 1e-12, 200, 9);
        CHECK(bumped >= base - 1e-12);
    }
}

TEST_CASE("mc variance shrinks with draw count")
{
    const ChannelModel model = oracles::scalar_model();
    const int reps = 100;
    arma::vec small(reps), large(reps);
    for (int r = 0; r < reps; ++r) {
        small(r) = ergodic_se_mc(model, scalar_phase(), scalar_alloc(1.0), 1.0, 50,
                                 1000 + r);
        large(r) = ergodic_se_mc(model, scalar_phase(), scalar_alloc(1.0), 1.0, 100,
                                 5000 + r);
    }
    const double ratio = arma::var(small) / arma::var(large);
    CHECK(ratio > 1.25);
    CHECK(ratio < 3.2);
}

TEST_CASE("total power at the simulation constants")
{
    SystemConfig cfg; // defaults carry the standard setup
    cfg.phase_mode = PhaseMode::dps;
    cfg.bits = 2;
    PowerAllocation alloc;
    alloc.basis.resize(4);
    alloc.stream_power.assign(4, arma::vec(2, arma::fill::value(0.05)));
    // 4*(0.1/0.3 + 0.01) + 7.943 + 32*0.0316
    CHECK(total_power(cfg, alloc) == doctest::Approx(10.3285).epsilon(2e-4));
    CHECK(total_power(cfg, alloc) == doctest::Approx(10.33).epsilon(2e-3));

    PowerAllocation doubled = alloc;
    for (auto &lam : doubled.stream_power)
        lam *= 2.0;
    double extra = 0.0;
    for (arma::uword k = 0; k < 4; ++k)
        extra += cfg.amp_inefficiency(k) * arma::accu(alloc.stream_power[k]);
    CHECK(total_power(cfg, doubled) - total_power(cfg, alloc) ==
          doctest::Approx(extra).epsilon(1e-12));
}

TEST_CASE("total power vanishes when every term does")
{
    SystemConfig cfg;
    cfg.num_uts = 1;
    cfg.ut_antennas = {1};
    cfg.ris_elements = 0;
    cfg.amp_inefficiency = arma::vec{1.0};
    cfg.circuit_power_w = arma::vec{0.0};
    cfg.pmax_w = arma::vec{1.0};
    cfg.bs_power_w = 0.0;
    PowerAllocation alloc = scalar_alloc(0.0);
    CHECK(total_power(cfg, alloc) == 0.0);
}

TEST_CASE("resource-efficiency blend")
{
    SystemConfig cfg;
    cfg.num_uts = 1;
    cfg.ut_antennas = {1};
    cfg.ris_elements = 4;
    cfg.amp_inefficiency = arma::vec{2.0};
    cfg.circuit_power_w = arma::vec{1.0};
    cfg.pmax_w = arma::vec{10.0};
    cfg.bs_power_w = 1.0;
    cfg.phase_mode = PhaseMode::cps;
    cfg.ris_elem_power_cps_w = 2.0;
    cfg.beta = 1.0;
    REQUIRE(cfg.total_budget_w() == doctest::Approx(20.0).epsilon(1e-14));

    const MetricReport r = re_metric(cfg, 8.0, 10.0);
    CHECK(r.re == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(r.ee == doctest::Approx(cfg.bandwidth_hz * 0.8).epsilon(1e-14));

    // With beta = 0 the blend reduces to EE exactly.
    cfg.beta = 0.0;
    const MetricReport r0 = re_metric(cfg, 8.0, 10.0);
    CHECK(r0.ee == cfg.bandwidth_hz * r0.re);

    const MetricReport rz = re_metric(cfg, 0.0, 10.0);
    CHECK(rz.re == 0.0);
    CHECK(rz.ee == 0.0);

    // Linear in the rate at fixed powers.
    cfg.beta = 0.7;
    const MetricReport one = re_metric(cfg, 3.0, 10.0);
    const MetricReport two = re_metric(cfg, 6.0, 10.0);
    CHECK(two.re == doctest::Approx(2.0 * one.re).epsilon(1e-14));

    CHECK_THROWS_AS(re_metric(cfg, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("blend weight from the convex-combination parameter")
{
    SystemConfig cfg;
    cfg.bandwidth_hz = cfg.total_budget_w(); // P_tot/W = 1
    CHECK(beta_from_alpha(0.5, cfg) == doctest::Approx(1.0).epsilon(1e-12));

    cfg.bandwidth_hz = cfg.total_budget_w() / 3.0; // P_tot/W = 3
    CHECK(beta_from_alpha(2.0 / 3.0, cfg) == doctest::Approx(6.0).epsilon(1e-12));

    CHECK(beta_from_alpha(1e-9, cfg) ==
          doctest::Approx(1e-9 * 3.0).epsilon(1e-6));

    CHECK_THROWS_AS(beta_from_alpha(0.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(beta_from_alpha(1.0, cfg), std::invalid_argument);
}
