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

#ifndef risre_power_alloc_H
#define risre_power_alloc_H

#include "risre/det_equiv.hpp"
#include "risre/types.hpp"

namespace risre {

// The power subproblem with the deterministic-equivalent auxiliaries frozen:
// the rate becomes separable, R(lambda) = sum log2(1 + gain*lambda) + const,
// and the consumed power stays affine.
struct PowerObjective {
    std::vector<arma::vec> stream_gain;  // frozen per-stream SE slopes
    double const_bits = 0.0;             // phase/BS terms of the DE rate
    arma::vec pmax_w;
    arma::vec amp_inefficiency;
    double static_w = 0.0;               // circuit + BS + RIS static power
    double beta = 0.0;
    double ptot_w = 1.0;

    double rate_bits(const std::vector<arma::vec> &lam) const;
    double power_w(const std::vector<arma::vec> &lam) const;
    // Fractional objective R/P + beta R/P_tot.
    double fractional(const std::vector<arma::vec> &lam) const;
    // Non-fractional surrogate 2 y sqrt(R) - y^2 P + beta R/P_tot.
    double surrogate(const std::vector<arma::vec> &lam, double y) const;

    bool se_mode() const { return arma::accu(amp_inefficiency != 0.0) == 0; }
};

PowerObjective make_power_objective(const DeState &state, const ChannelModel &model,
                                    const SystemConfig &cfg);

// Optimal transmit eigenbases: a copy of the channel's transmit-side bases.
std::vector<arma::cx_mat> optimal_directions(const ChannelModel &model);

// Closed-form auxiliary scalar sqrt(R)/P.
double optimal_y(double se_bits, double p_watts);

// Maximizes the surrogate at fixed y over the per-UT budget sets
// {lambda >= 0, sum lambda <= pmax} by projected gradient ascent with
// Armijo backtracking (halving from unit step). Never returns a point worse
// than the warm start.
PowerAllocation inner_concave_solve(const PowerObjective &obj, double y,
                                    const PowerAllocation &warm,
                                    double grad_tol = 1e-6, int max_steps = 2000);

struct QtResult {
    PowerAllocation alloc;
    std::vector<double> objective_trace; // fractional objective, starts at init
    int iterations = 0;
};

// Alternates the closed-form y update with the concave inner solve until the
// fractional objective stalls. When every amplifier inefficiency is zero the
// consumed power no longer depends on lambda; a single inner solve is then
// already optimal and the loop returns after one iteration.
QtResult quadratic_transform_solve(const PowerObjective &obj,
                                   const PowerAllocation &init, double eps,
                                   int max_iter = 100);

// Euclidean projection onto {x >= 0, sum(x) <= budget}.
arma::vec project_budget(arma::vec x, double budget);

} // namespace risre

#endif
