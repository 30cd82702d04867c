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

#include "risre/ao.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "risre/channel.hpp"
#include "risre/rng.hpp"

namespace risre {

Mode mode_from_string(const std::string &s)
{
    if (s == "re")
        return Mode::re;
    if (s == "ee")
        return Mode::ee;
    if (s == "se")
        return Mode::se;
    throw std::invalid_argument("unknown mode '" + s + "' (expected re, ee or se)");
}

const char *mode_to_string(Mode m)
{
    switch (m) {
    case Mode::re:
        return "re";
    case Mode::ee:
        return "ee";
    default:
        return "se";
    }
}

SystemConfig apply_mode(SystemConfig cfg, Mode mode)
{
    if (mode == Mode::ee)
        cfg.beta = 0.0;
    else if (mode == Mode::se)
        cfg.amp_inefficiency.zeros();
    return cfg;
}

namespace {

double mode_objective(const SystemConfig &mode_cfg, const PowerAllocation &alloc,
                      double se_de)
{
    const double p = total_power(mode_cfg, alloc);
    return se_de / p + mode_cfg.beta * se_de / mode_cfg.total_budget_w();
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void finalize_report(SolveReport &rep, const ChannelModel &model,
                     const SystemConfig &cfg, const SystemConfig &mode_cfg,
                     std::uint64_t seed, const SolveOptions &opts)
{
    DeState de = de_fixed_point(model, rep.phase.phi, rep.alloc, cfg.noise_w,
                                opts.de_eps);
    rep.se_de = de.se_bits;
    rep.p_sum_w = total_power(cfg, rep.alloc);
    rep.ee = cfg.bandwidth_hz * rep.se_de / rep.p_sum_w;
    rep.re = mode_objective(mode_cfg, rep.alloc, rep.se_de);
    if (opts.mc_draws > 0)
        rep.se_mc = ergodic_se_mc(model, rep.phase, rep.alloc, cfg.noise_w,
                                  opts.mc_draws,
                                  derive_key({seed, tag::mc_validation}));
}

} // namespace

SolveReport solve(const ChannelModel &model, const SystemConfig &cfg, Mode mode,
                  std::uint64_t seed, const SolveOptions &opts)
{
    cfg.validate();
    const SystemConfig mode_cfg = apply_mode(cfg, mode);
    const PhaseConstraint con = cfg.constraint();
    Clock clock;

    SolveReport rep;
    rep.alloc = equal_power_allocation(cfg, optimal_directions(model));
    rep.phase = {snap_to_set(arma::cx_vec(cfg.ris_elements, arma::fill::ones), con),
                 con};

    try {
        DeState de = de_fixed_point(model, rep.phase.phi, rep.alloc, cfg.noise_w,
                                    opts.de_eps);
        double obj_prev = mode_objective(mode_cfg, rep.alloc, de.se_bits);

        for (int t = 1; t <= opts.max_outer; ++t) {
            // Power step with the auxiliaries frozen at the current iterate.
            const PowerObjective pobj = make_power_objective(de, model, mode_cfg);
            QtResult qt = quadratic_transform_solve(pobj, rep.alloc, opts.eps);
            rep.alloc = std::move(qt.alloc);

            // Refresh the auxiliaries for the phase step.
            const DeState de_mid = de_fixed_point(model, rep.phase.phi, rep.alloc,
                                                  cfg.noise_w, opts.de_eps);
            BcdResult bcd =
                wmmse_bcd(model, de_mid.stream_power, cfg.noise_w, con,
                          rep.phase.phi, opts.eps, opts.bcd_max_iter, opts.gemm);
            rep.phase.phi = std::move(bcd.phi);

            de = de_fixed_point(model, rep.phase.phi, rep.alloc, cfg.noise_w,
                                opts.de_eps);
            const double obj = mode_objective(mode_cfg, rep.alloc, de.se_bits);

            TraceRow row;
            row.iter = t;
            row.se_de = de.se_bits;
            row.ee = cfg.bandwidth_hz * de.se_bits / total_power(cfg, rep.alloc);
            row.re_obj = obj;
            row.f3 = qt.objective_trace.back();
            row.f5 = bcd.rate_trace.back();
            if (opts.mc_each_iter && opts.mc_draws > 0)
                row.se_mc = ergodic_se_mc(model, rep.phase, rep.alloc, cfg.noise_w,
                                          opts.mc_draws,
                                          derive_key({seed, tag::mc_validation,
                                                      static_cast<std::uint64_t>(t)}));
            rep.trace.push_back(row);
            rep.f3_traces.push_back(std::move(qt.objective_trace));
            rep.f5_traces.push_back(std::move(bcd.rate_trace));
            rep.iterations = t;

            if (std::abs(obj - obj_prev) <= opts.eps * std::max(std::abs(obj_prev), 1e-12)) {
                rep.converged = true;
                break;
            }
            obj_prev = obj;
        }
        finalize_report(rep, model, cfg, mode_cfg, seed, opts);
    } catch (const std::exception &e) {
        rep.error = e.what();
    }
    rep.wall_ms = clock.ms();
    return rep;
}

SolveReport baseline(const ChannelModel &model, const SystemConfig &cfg,
                     BaselineScheme scheme, std::uint64_t seed,
                     const SolveOptions &opts)
{
    cfg.validate();
    const SystemConfig mode_cfg = cfg; // baselines keep the configured blend
    const PhaseConstraint con = cfg.constraint();
    Clock clock;

    SolveReport rep;
    rep.alloc = equal_power_allocation(cfg, optimal_directions(model));
    rep.phase = {snap_to_set(arma::cx_vec(cfg.ris_elements, arma::fill::ones), con),
                 con};

    try {
        if (scheme == BaselineScheme::identity_phi_equal_power) {
            finalize_report(rep, model, cfg, mode_cfg, seed, opts);
            rep.converged = true;
            rep.wall_ms = clock.ms();
            return rep;
        }

        // Fixed phases, power optimized: the outer loop without a phase step.
        DeState de = de_fixed_point(model, rep.phase.phi, rep.alloc, cfg.noise_w,
                                    opts.de_eps);
        double obj_prev = mode_objective(mode_cfg, rep.alloc, de.se_bits);
        for (int t = 1; t <= opts.max_outer; ++t) {
            const PowerObjective pobj = make_power_objective(de, model, mode_cfg);
            QtResult qt = quadratic_transform_solve(pobj, rep.alloc, opts.eps);
            rep.alloc = std::move(qt.alloc);

            de = de_fixed_point(model, rep.phase.phi, rep.alloc, cfg.noise_w,
                                opts.de_eps);
            const double obj = mode_objective(mode_cfg, rep.alloc, de.se_bits);

            TraceRow row;
            row.iter = t;
            row.se_de = de.se_bits;
            row.ee = cfg.bandwidth_hz * de.se_bits / total_power(cfg, rep.alloc);
            row.re_obj = obj;
            row.f3 = qt.objective_trace.back();
            row.f5 = arma::datum::nan;
            rep.trace.push_back(row);
            rep.f3_traces.push_back(std::move(qt.objective_trace));
            rep.iterations = t;

            if (std::abs(obj - obj_prev) <= opts.eps * std::max(std::abs(obj_prev), 1e-12)) {
                rep.converged = true;
                break;
            }
            obj_prev = obj;
        }
        finalize_report(rep, model, cfg, mode_cfg, seed, opts);
    } catch (const std::exception &e) {
        rep.error = e.what();
    }
    rep.wall_ms = clock.ms();
    return rep;
}

SystemConfig apply_grid_point(SystemConfig cfg, GridSpec::Kind kind, double value)
{
    switch (kind) {
    case GridSpec::Kind::pmax_dbm:
        cfg.pmax_w.fill(dbm_to_watt(value));
        break;
    case GridSpec::Kind::beta_over_ptot:
        if (!(value >= 0.0))
            throw std::invalid_argument("beta/P_tot must be >= 0");
        cfg.beta = value * cfg.total_budget_w();
        break;
    case GridSpec::Kind::bits:
        cfg.phase_mode = PhaseMode::dps;
        cfg.bits = static_cast<int>(value);
        break;
    }
    return cfg;
}

namespace {

// Index pool shared by the sweep-style runners.
template <typename Fn>
void run_indexed(std::size_t n, int jobs, Fn &&run_point)
{
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i)
            run_point(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                run_point(i);
        });
    for (auto &th : pool)
        th.join();
}

} // namespace

std::vector<SolveReport> sweep(const SystemConfig &cfg, Mode mode,
                               const GridSpec &grid, std::uint64_t seed,
                               const SolveOptions &opts, int jobs)
{
    if (grid.values.empty())
        throw std::invalid_argument("sweep: grid must be non-empty");
    cfg.validate();

    const std::size_t n = grid.values.size();
    std::vector<SolveReport> reports(n);
    run_indexed(n, jobs, [&](std::size_t i) {
        try {
            const SystemConfig cfg_i = apply_grid_point(cfg, grid.kind, grid.values[i]);
            cfg_i.validate();
            const ChannelModel model = generate_channel(cfg_i, seed);
            reports[i] = solve(model, cfg_i, mode, seed + i, opts);
        } catch (const std::exception &e) {
            reports[i].error = e.what();
        }
    });
    return reports;
}

std::vector<SolveReport> tradeoff(const SystemConfig &cfg,
                                  const std::vector<double> &beta_over_ptot,
                                  const std::vector<double> &pmax_dbm,
                                  std::uint64_t seed, const SolveOptions &opts,
                                  int jobs)
{
    if (beta_over_ptot.empty() || pmax_dbm.empty())
        throw std::invalid_argument("tradeoff: grids must be non-empty");
    cfg.validate();

    const std::size_t n = beta_over_ptot.size() * pmax_dbm.size();
    std::vector<SolveReport> reports(n);
    run_indexed(n, jobs, [&](std::size_t i) {
        const std::size_t b = i / pmax_dbm.size();
        const std::size_t p = i % pmax_dbm.size();
        try {
            SystemConfig cfg_i =
                apply_grid_point(cfg, GridSpec::Kind::pmax_dbm, pmax_dbm[p]);
            cfg_i = apply_grid_point(cfg_i, GridSpec::Kind::beta_over_ptot,
                                     beta_over_ptot[b]);
            cfg_i.validate();
            const ChannelModel model = generate_channel(cfg_i, seed);
            reports[i] = solve(model, cfg_i, Mode::re, seed + i, opts);
        } catch (const std::exception &e) {
            reports[i].error = e.what();
        }
    });
    return reports;
}

} // namespace risre
