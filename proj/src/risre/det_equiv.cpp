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

#include "risre/det_equiv.hpp"

namespace risre {

DeState de_fixed_point(const ChannelModel &model, const arma::cx_vec &phi,
                       const PowerAllocation &alloc, double sigma2, double eps,
                       int max_sweeps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("de_fixed_point: eps must be positive");
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("de_fixed_point: noise power must be positive");

    const arma::uword m = model.bs_antennas();
    const arma::uword num_uts = model.num_uts();

    // Effective element bases H1 diag(phi) U_k, fixed during the iteration.
    std::vector<arma::cx_mat> elem_basis(num_uts);
    for (arma::uword k = 0; k < num_uts; ++k)
        elem_basis[k] = model.ris_to_bs * arma::diagmat(phi) * model.rx_basis[k];

    DeState st;
    st.elem_gain.resize(num_uts);
    st.stream_gain.resize(num_uts);
    st.stream_power.resize(num_uts);
    for (arma::uword k = 0; k < num_uts; ++k)
        st.stream_power[k] = alloc.stream_power[k]; // exact for zero gain

    double prev_residual = arma::datum::inf;
    int stalled = 0;
    bool damped = false;

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        arma::cx_mat load(m, m, arma::fill::zeros);
        for (arma::uword k = 0; k < num_uts; ++k)
            load += elem_basis[k] *
                    arma::diagmat(model.coupling[k] * st.stream_power[k] / sigma2) *
                    elem_basis[k].t();
        load = 0.5 * (load + load.t());
        arma::cx_mat reg = load;
        reg.diag() += 1.0;

        double residual = 0.0;
        for (arma::uword k = 0; k < num_uts; ++k) {
            const arma::cx_mat x = arma::solve(reg, elem_basis[k],
                                               arma::solve_opts::likely_sympd);
            st.elem_gain[k] =
                arma::real(arma::sum(arma::conj(elem_basis[k]) % x, 0)).t() / sigma2;
            st.stream_gain[k] = model.coupling[k].t() * st.elem_gain[k];

            const arma::vec &lam = alloc.stream_power[k];
            arma::vec next = lam / (1.0 + st.stream_gain[k] % lam);
            if (damped)
                next = 0.5 * (next + st.stream_power[k]);
            residual = std::max(residual,
                                arma::abs(next - st.stream_power[k]).max());
            st.stream_power[k] = std::move(next);
        }

        st.sweeps = sweep;
        st.residual = residual;
        if (residual <= eps) {
            // Rebuild the BS-side matrix from the final auxiliaries.
            st.bs_load.zeros(m, m);
            for (arma::uword k = 0; k < num_uts; ++k)
                st.bs_load +=
                    elem_basis[k] *
                    arma::diagmat(model.coupling[k] * st.stream_power[k] / sigma2) *
                    elem_basis[k].t();
            st.bs_load = 0.5 * (st.bs_load + st.bs_load.t());
            st.se_bits = de_se(st, model, alloc);
            return st;
        }

        // Oscillation guard: residual not improving for 10 sweeps.
        if (residual >= prev_residual) {
            if (++stalled >= 10)
                damped = true;
        } else {
            stalled = 0;
        }
        prev_residual = residual;
    }
    throw SolverError("de_fixed_point: no convergence after " +
                          std::to_string(max_sweeps) + " sweeps",
                      st.residual);
}

double de_se(const DeState &state, const ChannelModel &model,
             const PowerAllocation &alloc)
{
    double se = log2det_eye_plus(state.bs_load);
    for (arma::uword k = 0; k < model.num_uts(); ++k) {
        se += arma::accu(arma::log2(1.0 + state.stream_gain[k] %
                                              alloc.stream_power[k]));
        // Correction term of the asymptotic expression, natural-log based.
        se -= arma::dot(state.elem_gain[k],
                        model.coupling[k] * state.stream_power[k]) /
              std::log(2.0);
    }
    return se;
}

} // namespace risre
