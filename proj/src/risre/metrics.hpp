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

#ifndef risre_metrics_H
#define risre_metrics_H

#include <cstdint>

#include "risre/channel.hpp"
#include "risre/types.hpp"

namespace risre {

// Monte-Carlo estimate of the ergodic spectral efficiency
//   (1/n) sum_d log2 det(I_M + (1/sigma2) sum_k G_k Q_k G_k^H)
// where G_k is the effective channel of draw d. Draws are keyed by index, so
// the result is independent of evaluation order; the reduction runs in fixed
// index order.
double ergodic_se_mc(const ChannelModel &model, const PhaseVector &phase,
                     const PowerAllocation &alloc, double sigma2,
                     std::uint64_t n_draws, std::uint64_t seed);

// sum_k (xi_k tr(Lambda_k) + P_c,k) + P_BS + N_R P_s(b)
double total_power(const SystemConfig &cfg, const PowerAllocation &alloc);

// EE, RE and companions at a given operating point.
MetricReport re_metric(const SystemConfig &cfg, double se_bits, double p_sum_w);

// Weight beta realizing the blend (1-alpha) EE + alpha SE, alpha in (0,1).
double beta_from_alpha(double alpha, const SystemConfig &cfg);

} // namespace risre

#endif
