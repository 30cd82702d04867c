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

#ifndef risre_phase_opt_H
#define risre_phase_opt_H

#include <complex>
#include <vector>

#include "risre/channel.hpp"
#include "risre/types.hpp"

namespace risre {

// Aggregated element-domain covariance sum_k rx_basis_k diag(coupling_k w_k)
// rx_basis_k^H for per-stream weights w_k (Hermitian PSD).
arma::cx_mat build_ris_cov(const ChannelModel &model,
                           const std::vector<arma::vec> &stream_weights);

// MSE matrix of the hypothetical link with receiver u, beamformer
// diag(phi) ris_cov^{1/2}:  (u^H H1 Phi A^{1/2} - I)(.)^H + sigma2 u^H u.
arma::cx_mat mse_matrix(const arma::cx_mat &receiver, const arma::cx_mat &h1,
                        const arma::cx_vec &phi, const arma::cx_mat &ris_cov_sqrt,
                        double sigma2);

struct WmmseBlocks {
    arma::cx_mat receiver; // MMSE receiver, M x N_R
    arma::cx_mat weight;   // inverse MSE matrix, N_R x N_R
};

// Closed-form receiver/weight updates at a fixed phase vector.
WmmseBlocks wmmse_closed_forms(const arma::cx_mat &h1, const arma::cx_vec &phi,
                               const arma::cx_mat &ris_cov,
                               const arma::cx_mat &ris_cov_sqrt, double sigma2);

// Quadratic-form data of the per-element phase subproblem
//   f(phi) = phi^H quad phi - 2 Re(phi^H conj(lin)).
struct PhaseProblem {
    arma::cx_mat quad;  // B (Hadamard) A^T, Hermitian PSD
    arma::cx_vec lin;   // diagonal of A^{1/2} W U^H H1
};

PhaseProblem make_phase_problem(const arma::cx_mat &b, const arma::cx_mat &a,
                                const arma::cx_vec &c);

double phase_objective(const arma::cx_vec &phi, const PhaseProblem &prob);

// Element-wise projections onto the convex hulls of the feasible sets.
std::complex<double> project_cps(std::complex<double> z);
std::complex<double> project_dps(std::complex<double> z, int tau);
arma::cx_vec project_hull(const arma::cx_vec &phi, const PhaseConstraint &con);

// Exact members of the feasible set: unit modulus (cps, 0 maps to 1) or the
// nearest vertex angle (2 pi m + pi)/tau (dps, ties to the smaller index).
arma::cx_vec snap_to_set(const arma::cx_vec &phi, const PhaseConstraint &con);

// Gradient of the linearized penalty surrogate at z with anchor phi_bar:
//   2 quad z - 2 conj(lin) - 2 lambda phi_bar.
arma::cx_vec gradient_surrogate(const arma::cx_vec &z, const arma::cx_vec &anchor,
                                const PhaseProblem &prob, double lambda);

// Penalty homotopy schedule. lambda0/lambda_upp <= 0 select the automatic
// choice from the gradient bound on the hull.
struct GemmSchedule {
    int block_len = 20;         // J
    double growth = 3.0;        // penalty multiplier
    double lambda0 = -1.0;      // absolute override
    double lambda0_scale = 1e-3;
    double lambda_upp = -1.0;   // absolute override
};

struct PhaseSolveStats {
    long gradient_evals = 0;
    int iterations = 0;       // accepted first-order updates
    double objective = 0.0;   // final f(phi) on the snapped point
};

// Penalty-homotopy solver for the phase subproblem over the discrete or
// unit-modulus set: one extrapolated projected-gradient step per penalty
// linearization, penalty grown until it passes the equivalence threshold, a
// final snap onto the feasible set, and a gradient-free per-element polish.
arma::cx_vec nsp_gemm(const PhaseProblem &prob, const PhaseConstraint &con,
                      const arma::cx_vec &init, const GemmSchedule &schedule,
                      double eps, PhaseSolveStats *stats = nullptr);

// Reference variant: every penalty linearization is minimized to convergence
// by accelerated projected gradient before the anchor moves.
arma::cx_vec exact_mm(const PhaseProblem &prob, const PhaseConstraint &con,
                      const arma::cx_vec &init, const GemmSchedule &schedule,
                      double eps, PhaseSolveStats *stats = nullptr);

// log2 det(I_M + (1/sigma2) H1 Phi A Phi^H H1^H)
double phase_rate(const arma::cx_mat &h1, const arma::cx_vec &phi,
                  const arma::cx_mat &ris_cov, double sigma2);

struct BcdResult {
    arma::cx_vec phi;
    std::vector<double> rate_trace; // starts at the initial point
    int iterations = 0;
};

// Block-coordinate descent over (receiver, weight, phase). The phase update
// is accepted only when it strictly improves its subproblem, which keeps the
// rate trace non-decreasing.
BcdResult wmmse_bcd(const ChannelModel &model,
                    const std::vector<arma::vec> &stream_weights, double sigma2,
                    const PhaseConstraint &con, const arma::cx_vec &init,
                    double eps, int max_iter = 100,
                    const GemmSchedule &schedule = {});

} // namespace risre

#endif
