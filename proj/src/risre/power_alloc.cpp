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

#include "risre/power_alloc.hpp"

#include <cmath>

namespace risre {

static constexpr double k_ln2 = 0.69314718055994530942;

double PowerObjective::rate_bits(const std::vector<arma::vec> &lam) const
{
    double r = const_bits;
    for (std::size_t k = 0; k < lam.size(); ++k)
        r += arma::accu(arma::log2(1.0 + stream_gain[k] % lam[k]));
    return r;
}

double PowerObjective::power_w(const std::vector<arma::vec> &lam) const
{
    double p = static_w;
    for (std::size_t k = 0; k < lam.size(); ++k)
        p += amp_inefficiency(k) * arma::accu(lam[k]);
    return p;
}

double PowerObjective::fractional(const std::vector<arma::vec> &lam) const
{
    const double r = rate_bits(lam);
    return r / power_w(lam) + beta * r / ptot_w;
}

double PowerObjective::surrogate(const std::vector<arma::vec> &lam, double y) const
{
    const double r = rate_bits(lam);
    return 2.0 * y * std::sqrt(std::max(r, 0.0)) - y * y * power_w(lam) +
           beta * r / ptot_w;
}

PowerObjective make_power_objective(const DeState &state, const ChannelModel &model,
                                    const SystemConfig &cfg)
{
    PowerObjective obj;
    obj.stream_gain = state.stream_gain;
    obj.pmax_w = cfg.pmax_w;
    obj.amp_inefficiency = cfg.amp_inefficiency;
    obj.static_w = cfg.bs_power_w +
                   static_cast<double>(cfg.ris_elements) * cfg.ris_elem_power_w() +
                   arma::accu(cfg.circuit_power_w);
    obj.beta = cfg.beta;
    obj.ptot_w = cfg.total_budget_w();

    // Rate terms that stay constant while the auxiliaries are frozen.
    obj.const_bits = log2det_eye_plus(state.bs_load);
    for (arma::uword k = 0; k < model.num_uts(); ++k)
        obj.const_bits -= arma::dot(state.elem_gain[k],
                                    model.coupling[k] * state.stream_power[k]) /
                          k_ln2;
    return obj;
}

std::vector<arma::cx_mat> optimal_directions(const ChannelModel &model)
{
    return model.tx_basis;
}

double optimal_y(double se_bits, double p_watts)
{
    if (!(p_watts > 0.0))
        throw std::invalid_argument("optimal_y: power must be positive");
    if (se_bits < 0.0)
        throw std::invalid_argument("optimal_y: rate must be nonnegative");
    return std::sqrt(se_bits) / p_watts;
}

arma::vec project_budget(arma::vec x, double budget)
{
    arma::vec clipped = arma::clamp(x, 0.0, arma::datum::inf);
    if (arma::accu(clipped) <= budget)
        return clipped;
    // Shift onto the simplex {x >= 0, sum = budget}.
    const arma::vec u = arma::sort(x, "descend");
    double cum = 0.0;
    double shift = 0.0;
    for (arma::uword j = 0; j < u.n_elem; ++j) {
        cum += u(j);
        const double t = (cum - budget) / static_cast<double>(j + 1);
        if (u(j) - t > 0.0)
            shift = t;
        else
            break;
    }
    return arma::clamp(x - shift, 0.0, arma::datum::inf);
}

namespace {

// d surrogate / d lambda_{k,n} =
//   (y/sqrt(R) + beta/P_tot) * g/(ln2 (1+g lambda)) - y^2 xi_k
std::vector<arma::vec> surrogate_gradient(const PowerObjective &obj,
                                          const std::vector<arma::vec> &lam,
                                          double y)
{
    const double r = obj.rate_bits(lam);
    const double sqrt_r = std::sqrt(std::max(r, 0.0));
    const double rate_coef = (sqrt_r > 0.0 ? y / sqrt_r : 0.0) + obj.beta / obj.ptot_w;
    std::vector<arma::vec> g(lam.size());
    for (std::size_t k = 0; k < lam.size(); ++k) {
        const arma::vec &gain = obj.stream_gain[k];
        g[k] = rate_coef * gain / (k_ln2 * (1.0 + gain % lam[k])) -
               y * y * obj.amp_inefficiency(k);
    }
    return g;
}

double stacked_norm(const std::vector<arma::vec> &v)
{
    double s = 0.0;
    for (const auto &x : v)
        s += arma::dot(x, x);
    return std::sqrt(s);
}

} // namespace

PowerAllocation inner_concave_solve(const PowerObjective &obj, double y,
                                    const PowerAllocation &warm, double grad_tol,
                                    int max_steps)
{
    if (y < 0.0)
        throw std::invalid_argument("inner_concave_solve: y must be >= 0");

    // Degenerate objective: constant in lambda, keep the warm start.
    if (y == 0.0 && obj.beta == 0.0)
        return warm;

    PowerAllocation cur = warm;
    // sqrt(R) is non-differentiable at R = 0; restart from equal power so the
    // rate is positive whenever any stream gain is.
    if (y > 0.0 && obj.rate_bits(cur.stream_power) <= 0.0) {
        for (std::size_t k = 0; k < cur.stream_power.size(); ++k)
            cur.stream_power[k].fill(obj.pmax_w(k) /
                                     static_cast<double>(cur.stream_power[k].n_elem));
    }

    const std::size_t num_uts = cur.stream_power.size();
    double f_cur = obj.surrogate(cur.stream_power, y);

    for (int step = 0; step < max_steps; ++step) {
        const std::vector<arma::vec> grad = surrogate_gradient(obj, cur.stream_power, y);

        // Unit-step projected-gradient residual as the stationarity measure.
        std::vector<arma::vec> moved(num_uts);
        std::vector<arma::vec> residual(num_uts);
        for (std::size_t k = 0; k < num_uts; ++k) {
            moved[k] = project_budget(cur.stream_power[k] + grad[k], obj.pmax_w(k));
            residual[k] = cur.stream_power[k] - moved[k];
        }
        if (stacked_norm(residual) <= grad_tol)
            break;

        double stepsize = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<arma::vec> cand(num_uts);
            double dir_dot = 0.0;
            for (std::size_t k = 0; k < num_uts; ++k) {
                cand[k] = project_budget(cur.stream_power[k] + stepsize * grad[k],
                                         obj.pmax_w(k));
                dir_dot += arma::dot(grad[k], cand[k] - cur.stream_power[k]);
            }
            const double f_cand = obj.surrogate(cand, y);
            if (f_cand >= f_cur + 1e-4 * dir_dot && f_cand >= f_cur) {
                cur.stream_power = std::move(cand);
                f_cur = f_cand;
                accepted = true;
                break;
            }
            stepsize *= 0.5;
        }
        if (!accepted)
            break; // no ascent step found; treat as stationary
    }
    return cur;
}

QtResult quadratic_transform_solve(const PowerObjective &obj,
                                   const PowerAllocation &init, double eps,
                                   int max_iter)
{
    QtResult res;
    res.alloc = init;
    double f_prev = obj.fractional(init.stream_power);
    res.objective_trace.push_back(f_prev);

    if (obj.se_mode()) {
        // Constant consumed power: the inner solve maximizes the rate itself
        // and is optimal after a single pass.
        const double y = optimal_y(std::max(obj.rate_bits(res.alloc.stream_power), 0.0),
                                   obj.power_w(res.alloc.stream_power));
        res.alloc = inner_concave_solve(obj, y, res.alloc);
        res.objective_trace.push_back(obj.fractional(res.alloc.stream_power));
        res.iterations = 1;
        return res;
    }

    for (int q = 1; q <= max_iter; ++q) {
        const double y =
            optimal_y(std::max(obj.rate_bits(res.alloc.stream_power), 0.0),
                      obj.power_w(res.alloc.stream_power));
        res.alloc = inner_concave_solve(obj, y, res.alloc);
        const double f = obj.fractional(res.alloc.stream_power);
        res.objective_trace.push_back(f);
        res.iterations = q;
        if (std::abs(f - f_prev) <= eps)
            break;
        f_prev = f;
    }
    return res;
}

} // namespace risre
