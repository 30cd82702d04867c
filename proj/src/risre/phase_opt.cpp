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

#include "risre/phase_opt.hpp"

#include <algorithm>
#include <cmath>

namespace risre {

static constexpr double k_pi = 3.14159265358979323846;

arma::cx_mat build_ris_cov(const ChannelModel &model,
                           const std::vector<arma::vec> &stream_weights)
{
    const arma::uword nr = model.ris_elements();
    arma::cx_mat a(nr, nr, arma::fill::zeros);
    for (arma::uword k = 0; k < model.num_uts(); ++k)
        a += model.rx_basis[k] *
             arma::diagmat(model.coupling[k] * stream_weights[k]) *
             model.rx_basis[k].t();
    return 0.5 * (a + a.t());
}

arma::cx_mat mse_matrix(const arma::cx_mat &receiver, const arma::cx_mat &h1,
                        const arma::cx_vec &phi, const arma::cx_mat &ris_cov_sqrt,
                        double sigma2)
{
    arma::cx_mat t = receiver.t() * h1 * arma::diagmat(phi) * ris_cov_sqrt;
    t.diag() -= 1.0;
    arma::cx_mat e = t * t.t() + sigma2 * (receiver.t() * receiver);
    return 0.5 * (e + e.t());
}

WmmseBlocks wmmse_closed_forms(const arma::cx_mat &h1, const arma::cx_vec &phi,
                               const arma::cx_mat &ris_cov,
                               const arma::cx_mat &ris_cov_sqrt, double sigma2)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("wmmse_closed_forms: noise power must be positive");

    const arma::cx_mat beamed = h1 * arma::diagmat(phi); // M x N_R
    arma::cx_mat rx_cov = beamed * ris_cov * beamed.t();
    rx_cov = 0.5 * (rx_cov + rx_cov.t());
    rx_cov.diag() += sigma2;

    WmmseBlocks out;
    out.receiver = arma::solve(rx_cov, beamed * ris_cov_sqrt,
                               arma::solve_opts::likely_sympd);
    const arma::cx_mat e = mse_matrix(out.receiver, h1, phi, ris_cov_sqrt, sigma2);
    if (!arma::inv_sympd(out.weight, e))
        throw SolverError("wmmse_closed_forms: MSE matrix not positive definite");
    out.weight = 0.5 * (out.weight + out.weight.t());
    return out;
}

PhaseProblem make_phase_problem(const arma::cx_mat &b, const arma::cx_mat &a,
                                const arma::cx_vec &c)
{
    if (b.n_rows != a.n_rows || b.n_cols != a.n_cols || c.n_elem != a.n_rows)
        throw std::invalid_argument("make_phase_problem: dimension mismatch");
    PhaseProblem prob;
    prob.quad = b % a.st();
    prob.quad = 0.5 * (prob.quad + prob.quad.t());
    prob.lin = c;
    return prob;
}

double phase_objective(const arma::cx_vec &phi, const PhaseProblem &prob)
{
    return std::real(arma::cdot(phi, prob.quad * phi)) -
           2.0 * std::real(arma::cdot(phi, arma::conj(prob.lin)));
}

std::complex<double> project_cps(std::complex<double> z)
{
    const double a = std::abs(z);
    return a <= 1.0 ? z : z / a;
}

std::complex<double> project_dps(std::complex<double> z, int tau)
{
    if (tau < 2)
        throw std::invalid_argument("project_dps: tau must be >= 2");
    const double sector = 2.0 * k_pi / tau;
    const double n = std::floor((std::arg(z) + k_pi / tau) / sector);
    const std::complex<double> rot = std::polar(1.0, -sector * n);
    const std::complex<double> zt = z * rot;
    const double re = std::clamp(zt.real(), 0.0, std::cos(k_pi / tau));
    const double im =
        std::clamp(zt.imag(), -std::sin(k_pi / tau), std::sin(k_pi / tau));
    return std::conj(rot) * std::complex<double>(re, im);
}

arma::cx_vec project_hull(const arma::cx_vec &phi, const PhaseConstraint &con)
{
    arma::cx_vec out(phi.n_elem);
    if (con.mode == PhaseMode::cps) {
        for (arma::uword n = 0; n < phi.n_elem; ++n)
            out(n) = project_cps(phi(n));
    } else {
        for (arma::uword n = 0; n < phi.n_elem; ++n)
            out(n) = project_dps(phi(n), con.tau);
    }
    return out;
}

namespace {

// Nearest vertex index in {0..tau-1}, vertex m at angle (2 pi m + pi)/tau.
// Exact ties resolve to the smaller index after wrap-around.
int nearest_vertex(std::complex<double> z, int tau)
{
    const double u = std::arg(z) * tau / (2.0 * k_pi) - 0.5;
    const double lo = std::floor(u);
    const double frac = u - lo;
    long m;
    if (frac > 0.5)
        m = static_cast<long>(lo) + 1;
    else if (frac < 0.5)
        m = static_cast<long>(lo);
    else {
        const long a = ((static_cast<long>(lo) % tau) + tau) % tau;
        const long b = ((static_cast<long>(lo) + 1) % tau + tau) % tau;
        m = std::min(a, b);
    }
    return static_cast<int>(((m % tau) + tau) % tau);
}

std::complex<double> vertex(int m, int tau)
{
    return std::polar(1.0, (2.0 * k_pi * m + k_pi) / tau);
}

} // namespace

arma::cx_vec snap_to_set(const arma::cx_vec &phi, const PhaseConstraint &con)
{
    arma::cx_vec out(phi.n_elem);
    if (con.mode == PhaseMode::cps) {
        for (arma::uword n = 0; n < phi.n_elem; ++n) {
            const double a = std::abs(phi(n));
            out(n) = a > 0.0 ? phi(n) / a : std::complex<double>(1.0, 0.0);
        }
    } else {
        for (arma::uword n = 0; n < phi.n_elem; ++n)
            out(n) = vertex(nearest_vertex(phi(n), con.tau), con.tau);
    }
    return out;
}

arma::cx_vec gradient_surrogate(const arma::cx_vec &z, const arma::cx_vec &anchor,
                                const PhaseProblem &prob, double lambda)
{
    return 2.0 * (prob.quad * z) - 2.0 * arma::conj(prob.lin) - 2.0 * lambda * anchor;
}

namespace {

double surrogate_value(const arma::cx_vec &x, const arma::cx_vec &anchor,
                       const PhaseProblem &prob, double lambda)
{
    const double lin_part =
        std::pow(arma::norm(anchor), 2) +
        2.0 * std::real(arma::cdot(anchor, x - anchor));
    return phase_objective(x, prob) - lambda * lin_part;
}

struct ApgState {
    arma::cx_vec cur, prev;
    double zeta_prev = 0.0;
    double zeta = 1.0;
    double stepscale = 1.0; // warm-started backtracking curvature estimate

    void advance_momentum()
    {
        const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * zeta * zeta));
        zeta_prev = zeta;
        zeta = next;
    }
};

// One extrapolated projected-gradient step on the surrogate anchored at
// `anchor`. Returns the movement norm.
double apg_step(ApgState &st, const arma::cx_vec &anchor, const PhaseProblem &prob,
                const PhaseConstraint &con, double lambda, long &grad_evals)
{
    const double alpha = (st.zeta_prev - 1.0) / st.zeta;
    const arma::cx_vec z = st.cur + alpha * (st.cur - st.prev);
    const arma::cx_vec g = gradient_surrogate(z, anchor, prob, lambda);
    ++grad_evals;
    const double f_z = surrogate_value(z, anchor, prob, lambda);

    double curvature = std::max(st.stepscale / 2.0, 1e-12);
    arma::cx_vec next;
    for (int bt = 0;; ++bt) {
        next = project_hull(z - g / curvature, con);
        const arma::cx_vec d = next - z;
        const double rhs = f_z + 0.5 * curvature * std::pow(arma::norm(d), 2) +
                           std::real(arma::cdot(g, d));
        const double f_next = surrogate_value(next, anchor, prob, lambda);
        // Slack sized to the roundoff of the two objective evaluations.
        const double slack = 1e-10 * (1.0 + std::abs(f_next) + std::abs(rhs));
        if (f_next <= rhs + slack)
            break;
        if (bt >= 60)
            throw SolverError("phase solver: backtracking line search failed");
        curvature *= 2.0;
    }
    st.stepscale = curvature;
    st.prev = st.cur;
    st.cur = next;
    st.advance_momentum();
    return arma::norm(st.cur - st.prev);
}

double auto_lambda_upp(const PhaseConstraint &con, double lipschitz)
{
    if (con.mode == PhaseMode::cps)
        return lipschitz;
    return lipschitz / std::sin(k_pi / con.tau);
}

// Gradient-free per-element polish on the exact feasible set. For cps each
// coefficient has a closed-form best response on the unit circle; for dps a
// best-response sweep over the vertex set is followed by pair sweeps, which
// escape the single-flip local minima the snap can land in.
void polish(arma::cx_vec &phi, const PhaseProblem &prob, const PhaseConstraint &con)
{
    const arma::uword nr = phi.n_elem;
    if (nr == 0)
        return;
    arma::cx_vec r = prob.quad * phi;

    auto apply = [&](arma::uword n, std::complex<double> v) {
        r += prob.quad.col(n) * (v - phi(n));
        phi(n) = v;
    };

    if (con.mode == PhaseMode::cps) {
        for (int round = 0; round < 100; ++round) {
            double moved = 0.0;
            for (arma::uword n = 0; n < nr; ++n) {
                const std::complex<double> a =
                    r(n) - prob.quad(n, n) * phi(n) - std::conj(prob.lin(n));
                const double mag = std::abs(a);
                if (mag == 0.0)
                    continue;
                const std::complex<double> v = -a / mag;
                moved = std::max(moved, std::abs(v - phi(n)));
                apply(n, v);
            }
            if (moved < 1e-12)
                break;
        }
        return;
    }

    const int tau = con.tau;
    std::vector<std::complex<double>> verts(tau);
    for (int m = 0; m < tau; ++m)
        verts[m] = vertex(m, tau);

    auto single_cost = [&](arma::uword n, std::complex<double> v) {
        const std::complex<double> cross = r(n) - prob.quad(n, n) * phi(n);
        return std::norm(v) * std::real(prob.quad(n, n)) +
               2.0 * std::real(std::conj(v) * cross) -
               2.0 * std::real(std::conj(v) * std::conj(prob.lin(n)));
    };

    const double improve_tol =
        1e-12 * (1.0 + arma::abs(prob.quad).max() * nr + arma::abs(prob.lin).max());

    auto sweep_single = [&]() {
        bool changed = false;
        for (arma::uword n = 0; n < nr; ++n) {
            double best = single_cost(n, phi(n));
            std::complex<double> best_v = phi(n);
            for (const auto &v : verts) {
                const double cost = single_cost(n, v);
                if (cost < best - improve_tol) {
                    best = cost;
                    best_v = v;
                }
            }
            if (best_v != phi(n)) {
                apply(n, best_v);
                changed = true;
            }
        }
        return changed;
    };

    auto pair_cost = [&](arma::uword n, arma::uword p, std::complex<double> vn,
                         std::complex<double> vp) {
        const std::complex<double> cross_n =
            r(n) - prob.quad(n, n) * phi(n) - prob.quad(n, p) * phi(p);
        const std::complex<double> cross_p =
            r(p) - prob.quad(p, p) * phi(p) - prob.quad(p, n) * phi(n);
        return std::norm(vn) * std::real(prob.quad(n, n)) +
               std::norm(vp) * std::real(prob.quad(p, p)) +
               2.0 * std::real(std::conj(vn) * prob.quad(n, p) * vp) +
               2.0 * std::real(std::conj(vn) * cross_n) +
               2.0 * std::real(std::conj(vp) * cross_p) -
               2.0 * std::real(std::conj(vn) * std::conj(prob.lin(n))) -
               2.0 * std::real(std::conj(vp) * std::conj(prob.lin(p)));
    };

    auto sweep_pairs = [&]() {
        bool changed = false;
        for (arma::uword n = 0; n < nr; ++n) {
            for (arma::uword p = n + 1; p < nr; ++p) {
                double best = pair_cost(n, p, phi(n), phi(p));
                std::complex<double> bn = phi(n), bp = phi(p);
                for (const auto &vn : verts)
                    for (const auto &vp : verts) {
                        const double cost = pair_cost(n, p, vn, vp);
                        if (cost < best - improve_tol) {
                            best = cost;
                            bn = vn;
                            bp = vp;
                        }
                    }
                if (bn != phi(n) || bp != phi(p)) {
                    apply(n, bn);
                    apply(p, bp);
                    changed = true;
                }
            }
        }
        return changed;
    };

    for (int round = 0; round < 60; ++round) {
        const bool s = sweep_single();
        const bool p = sweep_pairs();
        if (!s && !p)
            break;
    }
}

} // namespace

arma::cx_vec nsp_gemm(const PhaseProblem &prob, const PhaseConstraint &con,
                      const arma::cx_vec &init, const GemmSchedule &schedule,
                      double eps, PhaseSolveStats *stats)
{
    con.validate();
    if (schedule.block_len < 1 || !(schedule.growth > 1.0))
        throw std::invalid_argument("nsp_gemm: need J >= 1 and growth factor > 1");

    // Gradient bound of the objective on the hull (|phi_n| <= 1).
    const double lipschitz = 2.0 * spectral_norm_psd(prob.quad) *
                                 std::sqrt(static_cast<double>(init.n_elem)) +
                             2.0 * arma::norm(prob.lin);

    PhaseSolveStats local;
    arma::cx_vec result;
    if (lipschitz == 0.0) {
        // Constant objective; any feasible point is optimal.
        result = snap_to_set(init, con);
    } else {
        double lambda = schedule.lambda0 > 0.0 ? schedule.lambda0
                                               : schedule.lambda0_scale * lipschitz;
        const double lambda_upp = schedule.lambda_upp > 0.0
                                      ? schedule.lambda_upp
                                      : auto_lambda_upp(con, lipschitz);

        ApgState st;
        st.cur = project_hull(init, con);
        st.prev = st.cur;
        do {
            for (int i = 0; i < schedule.block_len; ++i) {
                const arma::cx_vec anchor = st.cur;
                const double moved =
                    apg_step(st, anchor, prob, con, lambda, local.gradient_evals);
                ++local.iterations;
                if (moved < eps)
                    lambda *= schedule.growth;
            }
            lambda *= schedule.growth;
        } while (lambda < lambda_upp);
        result = snap_to_set(st.cur, con);
    }

    polish(result, prob, con);
    local.objective = phase_objective(result, prob);
    if (stats)
        *stats = local;
    return result;
}

arma::cx_vec exact_mm(const PhaseProblem &prob, const PhaseConstraint &con,
                      const arma::cx_vec &init, const GemmSchedule &schedule,
                      double eps, PhaseSolveStats *stats)
{
    con.validate();
    if (schedule.block_len < 1 || !(schedule.growth > 1.0))
        throw std::invalid_argument("exact_mm: need J >= 1 and growth factor > 1");

    const double lipschitz = 2.0 * spectral_norm_psd(prob.quad) *
                                 std::sqrt(static_cast<double>(init.n_elem)) +
                             2.0 * arma::norm(prob.lin);

    PhaseSolveStats local;
    arma::cx_vec result;
    if (lipschitz == 0.0) {
        result = snap_to_set(init, con);
    } else {
        double lambda = schedule.lambda0 > 0.0 ? schedule.lambda0
                                               : schedule.lambda0_scale * lipschitz;
        const double lambda_upp = schedule.lambda_upp > 0.0
                                      ? schedule.lambda_upp
                                      : auto_lambda_upp(con, lipschitz);
        // Every linearization is solved to certified stationarity: the stop
        // test evaluates the projected-gradient residual at the current
        // point, which costs a gradient of its own.
        const double inner_tol =
            1e-8 * std::sqrt(static_cast<double>(init.n_elem));
        const int max_inner = 300;

        arma::cx_vec phi = project_hull(init, con);
        do {
            for (int i = 0; i < schedule.block_len; ++i) {
                const arma::cx_vec anchor = phi;
                ApgState st;
                st.cur = phi;
                st.prev = phi;
                for (int inner = 0; inner < max_inner; ++inner) {
                    const arma::cx_vec g =
                        gradient_surrogate(st.cur, anchor, prob, lambda);
                    ++local.gradient_evals;
                    const double residual = arma::norm(
                        st.cur - project_hull(st.cur - g / st.stepscale, con));
                    if (residual < inner_tol)
                        break;
                    apg_step(st, anchor, prob, con, lambda, local.gradient_evals);
                }
                phi = st.cur;
                ++local.iterations;
                if (arma::norm(phi - anchor) < eps)
                    lambda *= schedule.growth;
            }
            lambda *= schedule.growth;
        } while (lambda < lambda_upp);
        result = snap_to_set(phi, con);
    }

    polish(result, prob, con);
    local.objective = phase_objective(result, prob);
    if (stats)
        *stats = local;
    return result;
}

double phase_rate(const arma::cx_mat &h1, const arma::cx_vec &phi,
                  const arma::cx_mat &ris_cov, double sigma2)
{
    const arma::cx_mat beamed = h1 * arma::diagmat(phi);
    arma::cx_mat s = beamed * ris_cov * beamed.t() / sigma2;
    return log2det_eye_plus(s);
}

namespace {

// Greedy per-element ascent directly on the rate over the vertex set. The
// quadratic subproblem is tangent at its anchor and can rank every discrete
// flip below it even when flips raise the rate; this sweep supplies those
// moves. Returns the rate of the (possibly updated) phases.
double flip_ascent(arma::cx_vec &phi, const arma::cx_mat &h1,
                   const arma::cx_mat &ris_cov, double sigma2, int tau,
                   double rate)
{
    const arma::uword nr = phi.n_elem;
    for (int round = 0; round < 30; ++round) {
        bool improved = false;
        for (arma::uword n = 0; n < nr; ++n) {
            const std::complex<double> keep = phi(n);
            std::complex<double> best_v = keep;
            double best = rate;
            for (int m = 0; m < tau; ++m) {
                const std::complex<double> v = vertex(m, tau);
                if (v == keep)
                    continue;
                phi(n) = v;
                const double r = phase_rate(h1, phi, ris_cov, sigma2);
                if (r > best + 1e-12 * (1.0 + std::abs(best))) {
                    best = r;
                    best_v = v;
                }
            }
            phi(n) = best_v;
            if (best_v != keep) {
                rate = best;
                improved = true;
            }
        }
        if (!improved)
            break;
    }
    return rate;
}

} // namespace

BcdResult wmmse_bcd(const ChannelModel &model,
                    const std::vector<arma::vec> &stream_weights, double sigma2,
                    const PhaseConstraint &con, const arma::cx_vec &init,
                    double eps, int max_iter, const GemmSchedule &schedule)
{
    const arma::cx_mat ris_cov = build_ris_cov(model, stream_weights);
    const arma::cx_mat ris_cov_sqrt = psd_sqrt(ris_cov);
    const arma::cx_mat &h1 = model.ris_to_bs;

    BcdResult res;
    res.phi = init;
    double rate = phase_rate(h1, res.phi, ris_cov, sigma2);
    res.rate_trace.push_back(rate);

    for (int s = 1; s <= max_iter; ++s) {
        const WmmseBlocks blocks =
            wmmse_closed_forms(h1, res.phi, ris_cov, ris_cov_sqrt, sigma2);
        const arma::cx_mat uh = blocks.receiver.t() * h1; // N_R x N_R
        const arma::cx_mat b = uh.t() * blocks.weight * uh;
        const arma::cx_mat c_full = ris_cov_sqrt * blocks.weight * uh;
        const PhaseProblem prob =
            make_phase_problem(0.5 * (b + b.t()), ris_cov, c_full.diag());

        const arma::cx_vec cand = nsp_gemm(prob, con, res.phi, schedule, eps);
        // Accept on the true objective; the trace stays monotone by
        // construction and no surrogate bias can block a good candidate.
        double next = rate;
        const double cand_rate = phase_rate(h1, cand, ris_cov, sigma2);
        if (cand_rate > next) {
            res.phi = cand;
            next = cand_rate;
        }
        if (con.mode == PhaseMode::dps)
            next = flip_ascent(res.phi, h1, ris_cov, sigma2, con.tau, next);

        res.rate_trace.push_back(next);
        res.iterations = s;
        if (std::abs(next - rate) <= eps * std::max(std::abs(rate), 1e-12))
            break;
        rate = next;
    }
    return res;
}

} // namespace risre
