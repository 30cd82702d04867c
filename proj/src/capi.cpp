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

#include "risre.h"

#include <cstring>

#include "risre/ao.hpp"
#include "risre/channel.hpp"
#include "risre/config_io.hpp"
#include "risre/csv.hpp"
#include "risre/rng.hpp"

struct risre_config {
    risre::SystemConfig cfg;
};

struct risre_channel {
    risre::ChannelModel model;
};

struct risre_report {
    risre::SolveReport rep;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string &msg) { t_last_error = msg; }

template <typename Fn> risre_status guard(Fn &&fn)
{
    try {
        return fn();
    } catch (const risre::ConfigError &e) {
        set_error(e.line() > 0 ? "line " + std::to_string(e.line()) + ": " + e.what()
                               : std::string(e.what()));
        return RISRE_ERR_PARSE;
    } catch (const risre::SolverError &e) {
        set_error(e.what());
        return RISRE_ERR_SOLVER;
    } catch (const std::invalid_argument &e) {
        set_error(e.what());
        return RISRE_ERR_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        set_error(e.what());
        return RISRE_ERR_IO;
    }
}

risre::SolveOptions to_options(const risre_solve_options *opts)
{
    risre::SolveOptions o;
    if (opts) {
        o.eps = opts->eps;
        o.max_outer = opts->max_outer;
        o.mc_draws = opts->mc_draws;
        o.mc_each_iter = opts->mc_each_iter != 0;
    }
    return o;
}

risre_status copy_out(const std::vector<double> &src, double *buf, size_t cap,
                      size_t *len)
{
    if (len)
        *len = src.size();
    if (buf) {
        const size_t n = std::min(cap, src.size());
        std::memcpy(buf, src.data(), n * sizeof(double));
    }
    return RISRE_OK;
}

} // namespace

extern "C" {

const char *risre_status_str(risre_status status)
{
    switch (status) {
    case RISRE_OK:
        return "ok";
    case RISRE_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case RISRE_ERR_PARSE:
        return "parse error";
    case RISRE_ERR_SOLVER:
        return "solver error";
    default:
        return "i/o error";
    }
}

const char *risre_last_error(void) { return t_last_error.c_str(); }

risre_status risre_config_create_default(risre_config **out)
{
    return guard([&]() {
        if (!out)
            throw std::invalid_argument("null output pointer");
        *out = new risre_config{risre::SystemConfig{}};
        return RISRE_OK;
    });
}

risre_status risre_config_load(const char *path, risre_config **out)
{
    return guard([&]() {
        if (!path || !out)
            throw std::invalid_argument("null argument");
        auto cfg = risre::load_config(path);
        *out = new risre_config{std::move(cfg)};
        return RISRE_OK;
    });
}

risre_status risre_config_save(const risre_config *cfg, const char *path)
{
    return guard([&]() {
        if (!cfg || !path)
            throw std::invalid_argument("null argument");
        risre::save_config(cfg->cfg, path);
        return RISRE_OK;
    });
}

risre_status risre_config_set(risre_config *cfg, const char *key, const char *value)
{
    return guard([&]() {
        if (!cfg || !key || !value)
            throw std::invalid_argument("null argument");
        risre::set_config_key(cfg->cfg, key, value);
        return RISRE_OK;
    });
}

risre_status risre_config_get(const risre_config *cfg, const char *key, char *buf,
                              size_t buflen)
{
    return guard([&]() {
        if (!cfg || !key || !buf || buflen == 0)
            throw std::invalid_argument("null argument");
        const std::string v = risre::get_config_key(cfg->cfg, key);
        if (v.size() + 1 > buflen)
            throw std::invalid_argument("buffer too small");
        std::memcpy(buf, v.c_str(), v.size() + 1);
        return RISRE_OK;
    });
}

void risre_config_destroy(risre_config *cfg) { delete cfg; }

risre_status risre_channel_generate(const risre_config *cfg, uint64_t seed,
                                    risre_channel **out)
{
    return guard([&]() {
        if (!cfg || !out)
            throw std::invalid_argument("null argument");
        *out = new risre_channel{risre::generate_channel(cfg->cfg, seed)};
        return RISRE_OK;
    });
}

void risre_channel_destroy(risre_channel *chan) { delete chan; }

void risre_solve_options_init(risre_solve_options *opts)
{
    if (!opts)
        return;
    opts->eps = 1e-4;
    opts->max_outer = 50;
    opts->mc_draws = 1000;
    opts->mc_each_iter = 0;
}

risre_status risre_solve(const risre_config *cfg, const risre_channel *chan,
                         const char *mode, uint64_t seed,
                         const risre_solve_options *opts, risre_report **out)
{
    return guard([&]() {
        if (!cfg || !chan || !mode || !out)
            throw std::invalid_argument("null argument");
        auto rep = risre::solve(chan->model, cfg->cfg, risre::mode_from_string(mode),
                                seed, to_options(opts));
        const bool failed = !rep.error.empty();
        if (failed)
            set_error(rep.error);
        *out = new risre_report{std::move(rep)};
        return failed ? RISRE_ERR_SOLVER : RISRE_OK;
    });
}

risre_status risre_baseline(const risre_config *cfg, const risre_channel *chan,
                            int scheme, uint64_t seed,
                            const risre_solve_options *opts, risre_report **out)
{
    return guard([&]() {
        if (!cfg || !chan || !out)
            throw std::invalid_argument("null argument");
        if (scheme != 1 && scheme != 2)
            throw std::invalid_argument("baseline scheme must be 1 or 2");
        auto rep = risre::baseline(chan->model, cfg->cfg,
                                   static_cast<risre::BaselineScheme>(scheme), seed,
                                   to_options(opts));
        const bool failed = !rep.error.empty();
        if (failed)
            set_error(rep.error);
        *out = new risre_report{std::move(rep)};
        return failed ? RISRE_ERR_SOLVER : RISRE_OK;
    });
}

risre_status risre_report_metric(const risre_report *rep, const char *name,
                                 double *out)
{
    return guard([&]() {
        if (!rep || !name || !out)
            throw std::invalid_argument("null argument");
        const std::string n = name;
        const auto &r = rep->rep;
        if (n == "se_de")
            *out = r.se_de;
        else if (n == "se_mc")
            *out = r.se_mc;
        else if (n == "ee")
            *out = r.ee;
        else if (n == "re")
            *out = r.re;
        else if (n == "p_sum_w")
            *out = r.p_sum_w;
        else if (n == "wall_ms")
            *out = r.wall_ms;
        else
            throw std::invalid_argument("unknown metric '" + n + "'");
        return RISRE_OK;
    });
}

int risre_report_iterations(const risre_report *rep)
{
    return rep ? rep->rep.iterations : 0;
}

int risre_report_converged(const risre_report *rep)
{
    return rep && rep->rep.converged ? 1 : 0;
}

const char *risre_report_error(const risre_report *rep)
{
    return rep ? rep->rep.error.c_str() : "null report";
}

risre_status risre_report_trace(const risre_report *rep, const char *name,
                                double *buf, size_t cap, size_t *len)
{
    return guard([&]() {
        if (!rep || !name)
            throw std::invalid_argument("null argument");
        const std::string n = name;
        std::vector<double> vals;
        vals.reserve(rep->rep.trace.size());
        for (const auto &row : rep->rep.trace) {
            if (n == "se_de")
                vals.push_back(row.se_de);
            else if (n == "se_mc")
                vals.push_back(row.se_mc);
            else if (n == "ee")
                vals.push_back(row.ee);
            else if (n == "re")
                vals.push_back(row.re_obj);
            else if (n == "f3")
                vals.push_back(row.f3);
            else if (n == "f5")
                vals.push_back(row.f5);
            else
                throw std::invalid_argument("unknown trace '" + n + "'");
        }
        return copy_out(vals, buf, cap, len);
    });
}

risre_status risre_report_phase(const risre_report *rep, double *re, double *im,
                                size_t cap, size_t *len)
{
    return guard([&]() {
        if (!rep)
            throw std::invalid_argument("null argument");
        const arma::cx_vec &phi = rep->rep.phase.phi;
        if (len)
            *len = phi.n_elem;
        const size_t n = std::min<size_t>(cap, phi.n_elem);
        for (size_t i = 0; i < n; ++i) {
            if (re)
                re[i] = phi(i).real();
            if (im)
                im[i] = phi(i).imag();
        }
        return RISRE_OK;
    });
}

risre_status risre_report_power(const risre_report *rep, int ut, double *buf,
                                size_t cap, size_t *len)
{
    return guard([&]() {
        if (!rep)
            throw std::invalid_argument("null argument");
        const auto &sp = rep->rep.alloc.stream_power;
        if (ut < 0 || static_cast<size_t>(ut) >= sp.size())
            throw std::invalid_argument("UT index out of range");
        const arma::vec &lam = sp[static_cast<size_t>(ut)];
        return copy_out(arma::conv_to<std::vector<double>>::from(lam), buf, cap, len);
    });
}

void risre_report_destroy(risre_report *rep) { delete rep; }

risre_status risre_run_solve_csv(const risre_config *cfg, const char *mode,
                                 uint64_t seed, const risre_solve_options *opts,
                                 const char *csv_path)
{
    return guard([&]() {
        if (!cfg || !mode || !csv_path)
            throw std::invalid_argument("null argument");
        const auto model = risre::generate_channel(cfg->cfg, seed);
        const auto rep = risre::solve(model, cfg->cfg,
                                      risre::mode_from_string(mode), seed,
                                      to_options(opts));
        const double pmax_dbm = risre::watt_to_dbm(cfg->cfg.pmax_w(0));
        risre::write_summary_csv(
            csv_path,
            {risre::summary_row(std::string("solve-") + mode, pmax_dbm, rep)});
        if (!rep.error.empty()) {
            set_error(rep.error);
            return RISRE_ERR_SOLVER;
        }
        return RISRE_OK;
    });
}

risre_status risre_run_convergence_csv(const risre_config *cfg, const char *mode,
                                       uint64_t seed,
                                       const risre_solve_options *opts,
                                       const char *csv_path)
{
    return guard([&]() {
        if (!cfg || !mode || !csv_path)
            throw std::invalid_argument("null argument");
        const auto model = risre::generate_channel(cfg->cfg, seed);
        const auto rep = risre::solve(model, cfg->cfg,
                                      risre::mode_from_string(mode), seed,
                                      to_options(opts));
        risre::write_trace_csv(csv_path, std::string("convergence-") + mode, rep);
        if (!rep.error.empty()) {
            set_error(rep.error);
            return RISRE_ERR_SOLVER;
        }
        return RISRE_OK;
    });
}

risre_status risre_run_sweep_csv(const risre_config *cfg, const char *mode,
                                 const char *grid_kind, const double *values,
                                 size_t n_values, uint64_t seed,
                                 const risre_solve_options *opts, int jobs,
                                 const char *csv_path)
{
    return guard([&]() {
        if (!cfg || !mode || !grid_kind || !values || !csv_path)
            throw std::invalid_argument("null argument");
        risre::GridSpec grid;
        const std::string kind = grid_kind;
        if (kind == "pmax_dbm")
            grid.kind = risre::GridSpec::Kind::pmax_dbm;
        else if (kind == "beta_over_ptot")
            grid.kind = risre::GridSpec::Kind::beta_over_ptot;
        else if (kind == "bits")
            grid.kind = risre::GridSpec::Kind::bits;
        else
            throw std::invalid_argument("unknown grid kind '" + kind + "'");
        grid.values.assign(values, values + n_values);

        const auto reports = risre::sweep(cfg->cfg, risre::mode_from_string(mode),
                                          grid, seed, to_options(opts), jobs);
        std::vector<risre::SummaryRow> rows;
        bool any_failed = false;
        std::string first_error;
        for (size_t i = 0; i < reports.size(); ++i) {
            rows.push_back(risre::summary_row(std::string("sweep-") + mode + "-" +
                                                  kind,
                                              grid.values[i], reports[i]));
            if (!reports[i].error.empty()) {
                any_failed = true;
                if (first_error.empty())
                    first_error = reports[i].error;
            }
        }
        risre::write_summary_csv(csv_path, rows);
        if (any_failed) {
            set_error(first_error);
            return RISRE_ERR_SOLVER;
        }
        return RISRE_OK;
    });
}

risre_status risre_run_tradeoff_csv(const risre_config *cfg, const double *ratios,
                                    size_t n_ratios, const double *pmax_dbm,
                                    size_t n_pmax, uint64_t seed,
                                    const risre_solve_options *opts, int jobs,
                                    const char *csv_path)
{
    return guard([&]() {
        if (!cfg || !ratios || !pmax_dbm || !csv_path)
            throw std::invalid_argument("null argument");
        if (n_ratios == 0 || n_pmax == 0)
            throw std::invalid_argument("tradeoff grids must be non-empty");

        const std::vector<double> ratio_list(ratios, ratios + n_ratios);
        const std::vector<double> pmax_list(pmax_dbm, pmax_dbm + n_pmax);
        const auto reports = risre::tradeoff(cfg->cfg, ratio_list, pmax_list, seed,
                                             to_options(opts), jobs);
        std::vector<risre::SummaryRow> rows;
        bool any_failed = false;
        std::string first_error;
        for (size_t i = 0; i < reports.size(); ++i) {
            char label[64];
            std::snprintf(label, sizeof(label), "tradeoff-beta%g",
                          ratio_list[i / n_pmax]);
            rows.push_back(risre::summary_row(label, pmax_list[i % n_pmax],
                                              reports[i]));
            if (!reports[i].error.empty()) {
                any_failed = true;
                if (first_error.empty())
                    first_error = reports[i].error;
            }
        }
        risre::write_summary_csv(csv_path, rows);
        if (any_failed) {
            set_error(first_error);
            return RISRE_ERR_SOLVER;
        }
        return RISRE_OK;
    });
}

risre_status risre_validate_de(const risre_config *cfg, uint64_t seed,
                               int n_seeds, uint64_t draws, const char *csv_path,
                               double *max_rel_err)
{
    return guard([&]() {
        if (!cfg || n_seeds < 1 || draws == 0)
            throw std::invalid_argument("invalid validation parameters");
        const risre::SystemConfig &sc = cfg->cfg;
        sc.validate();

        std::vector<risre::SummaryRow> rows;
        double worst = 0.0;
        for (int i = 0; i < n_seeds; ++i) {
            const uint64_t s = seed + static_cast<uint64_t>(i);
            const auto model = risre::generate_channel(sc, s);
            const auto alloc = risre::equal_power_allocation(
                sc, risre::optimal_directions(model));
            const risre::PhaseVector phase{
                risre::snap_to_set(arma::cx_vec(sc.ris_elements, arma::fill::ones),
                                   sc.constraint()),
                sc.constraint()};
            const auto de =
                risre::de_fixed_point(model, phase.phi, alloc, sc.noise_w, 1e-9);
            const double mc = risre::ergodic_se_mc(
                model, phase, alloc, sc.noise_w, draws,
                risre::derive_key({s, risre::tag::mc_validation}));
            const double rel = std::abs(de.se_bits - mc) / mc;
            worst = std::max(worst, rel);

            risre::SummaryRow row;
            row.experiment = "validate-de";
            row.grid_value = static_cast<double>(s);
            row.se_de = de.se_bits;
            row.se_mc = mc;
            const double p_sum = risre::total_power(sc, alloc);
            const auto metric = risre::re_metric(sc, de.se_bits, p_sum);
            row.ee = metric.ee;
            row.re = metric.re;
            row.p_sum_w = p_sum;
            row.outer_iters = de.sweeps;
            row.converged = true;
            rows.push_back(row);
        }
        if (csv_path)
            risre::write_summary_csv(csv_path, rows);
        if (max_rel_err)
            *max_rel_err = worst;
        return RISRE_OK;
    });
}

} // extern "C"
