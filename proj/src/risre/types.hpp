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

#ifndef risre_types_H
#define risre_types_H

#include <armadillo>
#include <cstdint>
#include <vector>

#include "risre/common.hpp"

namespace risre {

enum class PhaseMode { cps, dps };

// Feasible set of one reflection coefficient: the full unit circle (cps) or
// tau = 2^bits uniformly spaced points offset by pi/tau (dps).
struct PhaseConstraint {
    PhaseMode mode = PhaseMode::cps;
    int tau = 4;

    void validate() const
    {
        if (mode == PhaseMode::dps) {
            if (tau < 2 || (tau & (tau - 1)) != 0)
                throw std::invalid_argument("PhaseConstraint: tau must be a power of two >= 2");
        }
    }
};

// All scalar system constants. Powers are stored in watts; the config loader
// converts from dBm.
struct SystemConfig {
    arma::uword num_uts = 4;            // K
    std::vector<arma::uword> ut_antennas{2, 2, 2, 2}; // N_k
    arma::uword bs_antennas = 8;        // M
    arma::uword ris_elements = 32;      // N_R

    double bandwidth_hz = 10e6;
    double noise_w = dbm_to_watt(-96.0);

    arma::vec amp_inefficiency;  // xi_k >= 1 (1/amplifier efficiency)
    arma::vec circuit_power_w;   // per-UT static circuit power
    double bs_power_w = dbm_to_watt(39.0);

    // Per-element RIS static power by phase-shifter resolution. Resolutions
    // beyond 2 bits fall back to the infinite-resolution figure.
    double ris_elem_power_b1_w = dbm_to_watt(5.0);
    double ris_elem_power_b2_w = dbm_to_watt(15.0);
    double ris_elem_power_cps_w = dbm_to_watt(25.0);

    arma::vec pmax_w;            // per-UT transmit power budget
    double beta = 0.0;           // EE-SE blend weight, >= 0

    PhaseMode phase_mode = PhaseMode::cps;
    int bits = 2;                // phase resolution in dps mode, tau = 2^bits

    double rho_min = 0.3;        // correlation-exponent range for the
    double rho_max = 0.9;        // synthetic channel generator

    SystemConfig()
    {
        amp_inefficiency = arma::vec(num_uts);
        amp_inefficiency.fill(1.0 / 0.3);
        circuit_power_w = arma::vec(num_uts);
        circuit_power_w.fill(dbm_to_watt(10.0));
        pmax_w = arma::vec(num_uts);
        pmax_w.fill(dbm_to_watt(20.0));
    }

    PhaseConstraint constraint() const
    {
        if (phase_mode == PhaseMode::cps)
            return {PhaseMode::cps, 0};
        return {PhaseMode::dps, 1 << bits};
    }

    double ris_elem_power_w() const
    {
        if (phase_mode == PhaseMode::cps)
            return ris_elem_power_cps_w;
        if (bits == 1)
            return ris_elem_power_b1_w;
        if (bits == 2)
            return ris_elem_power_b2_w;
        return ris_elem_power_cps_w;
    }

    // Overall available power budget (all UTs transmitting at their caps).
    double total_budget_w() const
    {
        double p = bs_power_w + static_cast<double>(ris_elements) * ris_elem_power_w();
        for (arma::uword k = 0; k < num_uts; ++k)
            p += pmax_w(k) + circuit_power_w(k);
        return p;
    }

    void validate() const;
};

// Eigen-decomposed transmit covariances: Q_k = V_k diag(lambda_k) V_k^H.
struct PowerAllocation {
    std::vector<arma::vec> stream_power;   // per-UT diagonal, entries >= 0
    std::vector<arma::cx_mat> basis;       // per-UT eigenbasis V_k

    arma::cx_mat covariance(arma::uword k) const
    {
        return basis[k] * arma::diagmat(stream_power[k]) * basis[k].t();
    }

    arma::cx_mat covariance_sqrt(arma::uword k) const
    {
        return basis[k] * arma::diagmat(arma::sqrt(stream_power[k]));
    }

    double total_transmit_w() const
    {
        double p = 0.0;
        for (const auto &lam : stream_power)
            p += arma::accu(lam);
        return p;
    }
};

// Equal split of the full budget across each UT's streams.
PowerAllocation equal_power_allocation(const SystemConfig &cfg,
                                       const std::vector<arma::cx_mat> &basis);

// RIS reflection coefficients plus the set they must live in.
struct PhaseVector {
    arma::cx_vec phi;
    PhaseConstraint constraint;
};

struct MetricReport {
    double se_bits = 0.0;   // bits/s/Hz
    double ee = 0.0;        // bits/Joule
    double re = 0.0;        // bits/Joule/Hz
    double p_sum_w = 0.0;
};

} // namespace risre

#endif
