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

#include "risre/types.hpp"

namespace risre {

void SystemConfig::validate() const
{
    if (num_uts == 0 || bs_antennas == 0 || ris_elements == 0)
        throw std::invalid_argument("SystemConfig: K, M, N_R must all be positive");
    if (ut_antennas.size() != num_uts)
        throw std::invalid_argument("SystemConfig: ut_antennas length must equal K");
    for (arma::uword nk : ut_antennas)
        if (nk == 0)
            throw std::invalid_argument("SystemConfig: every N_k must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("SystemConfig: bandwidth must be positive");
    if (!(noise_w > 0.0))
        throw std::invalid_argument("SystemConfig: noise power must be positive");
    if (amp_inefficiency.n_elem != num_uts || circuit_power_w.n_elem != num_uts ||
        pmax_w.n_elem != num_uts)
        throw std::invalid_argument("SystemConfig: per-UT arrays must have length K");
    for (arma::uword k = 0; k < num_uts; ++k) {
        // xi == 0 is the documented SE-maximization specialization
        if (!(amp_inefficiency(k) >= 1.0) && amp_inefficiency(k) != 0.0)
            throw std::invalid_argument("SystemConfig: xi_k must be >= 1 (or 0 in SE mode)");
        if (!(circuit_power_w(k) > 0.0))
            throw std::invalid_argument("SystemConfig: circuit power must be positive");
        if (!(pmax_w(k) > 0.0))
            throw std::invalid_argument("SystemConfig: power budget must be positive");
    }
    if (!(bs_power_w > 0.0) || !(ris_elem_power_b1_w > 0.0) ||
        !(ris_elem_power_b2_w > 0.0) || !(ris_elem_power_cps_w > 0.0))
        throw std::invalid_argument("SystemConfig: static powers must be positive");
    if (!(beta >= 0.0))
        throw std::invalid_argument("SystemConfig: beta must be >= 0");
    if (!(rho_min >= 0.0 && rho_min <= rho_max && rho_max < 1.0))
        throw std::invalid_argument("SystemConfig: need 0 <= rho_min <= rho_max < 1");
    constraint().validate();
}

PowerAllocation equal_power_allocation(const SystemConfig &cfg,
                                       const std::vector<arma::cx_mat> &basis)
{
    PowerAllocation alloc;
    alloc.basis = basis;
    alloc.stream_power.resize(cfg.num_uts);
    for (arma::uword k = 0; k < cfg.num_uts; ++k) {
        const arma::uword nk = cfg.ut_antennas[k];
        alloc.stream_power[k] = arma::vec(nk);
        alloc.stream_power[k].fill(cfg.pmax_w(k) / static_cast<double>(nk));
    }
    return alloc;
}

} // namespace risre
