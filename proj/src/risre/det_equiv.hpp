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

#ifndef risre_det_equiv_H
#define risre_det_equiv_H

#include "risre/channel.hpp"
#include "risre/types.hpp"

namespace risre {

// Converged state of the deterministic-equivalent fixed point.
//
// elem_gain[k](m)    per RIS element: quadratic form of the m-th effective
//                    column through the regularized inverse (1/sigma2 scaled)
// stream_power[k](n) per stream: budget shrunk by its own effective gain
// stream_gain[k](n)  diag of coupling^T * elem_gain, the per-stream SE slope
// bs_load            aggregated normalized covariance at the BS (M x M)
struct DeState {
    std::vector<arma::vec> elem_gain;
    std::vector<arma::vec> stream_power;
    std::vector<arma::vec> stream_gain;
    arma::cx_mat bs_load;
    double se_bits = 0.0;
    int sweeps = 0;
    double residual = 0.0;
};

// Jointly iterates all per-UT auxiliaries against the shared BS-side matrix
// until max |delta stream_power| <= eps. Throws SolverError (carrying the
// last residual) after max_sweeps without convergence.
DeState de_fixed_point(const ChannelModel &model, const arma::cx_vec &phi,
                       const PowerAllocation &alloc, double sigma2, double eps,
                       int max_sweeps = 500);

// Asymptotic spectral efficiency in bits/s/Hz for a converged state:
//   sum_k sum_n log2(1 + gain*power) + log2 det(I + bs_load)
//   - (1/ln 2) sum_k elem_gain^T coupling stream_power
double de_se(const DeState &state, const ChannelModel &model,
             const PowerAllocation &alloc);

} // namespace risre

#endif
