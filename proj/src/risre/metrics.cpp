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

#include "risre/metrics.hpp"

namespace risre {

double ergodic_se_mc(const ChannelModel &model, const PhaseVector &phase,
                     const PowerAllocation &alloc, double sigma2,
                     std::uint64_t n_draws, std::uint64_t seed)
{
    if (n_draws == 0)
        throw std::invalid_argument("ergodic_se_mc: need at least one draw");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("ergodic_se_mc: noise power must be positive");

    const arma::uword m = model.bs_antennas();
    double acc = 0.0;
    for (std::uint64_t d = 0; d < n_draws; ++d) {
        const ChannelDraw draw = draw_h2(model, seed, d);
        arma::cx_mat s(m, m, arma::fill::zeros);
        for (arma::uword k = 0; k < model.num_uts(); ++k) {
            const arma::cx_mat g =
                effective_channel(model, phase.phi, draw, k) * alloc.covariance_sqrt(k);
            s += g * g.t();
        }
        acc += log2det_eye_plus(s / sigma2);
    }
    return acc / static_cast<double>(n_draws);
}

double total_power(const SystemConfig &cfg, const PowerAllocation &alloc)
{
    double p = cfg.bs_power_w +
               static_cast<double>(cfg.ris_elements) * cfg.ris_elem_power_w();
    for (arma::uword k = 0; k < cfg.num_uts; ++k)
        p += cfg.amp_inefficiency(k) * arma::accu(alloc.stream_power[k]) +
             cfg.circuit_power_w(k);
    return p;
}

MetricReport re_metric(const SystemConfig &cfg, double se_bits, double p_sum_w)
{
    if (!(p_sum_w > 0.0))
        throw std::invalid_argument("re_metric: total power must be positive");
    MetricReport r;
    r.se_bits = se_bits;
    r.p_sum_w = p_sum_w;
    const double per_watt = se_bits / p_sum_w;
    r.ee = cfg.bandwidth_hz * per_watt;
    r.re = per_watt + cfg.beta * se_bits / cfg.total_budget_w();
    return r;
}

double beta_from_alpha(double alpha, const SystemConfig &cfg)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("beta_from_alpha: alpha must lie in (0,1)");
    return alpha / (1.0 - alpha) * cfg.total_budget_w() / cfg.bandwidth_hz;
}

} // namespace risre
