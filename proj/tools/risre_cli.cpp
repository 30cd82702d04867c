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
//
// Command-line front end. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risre.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string mode = "re";
    double beta_over_ptot = -1.0; // <0: keep config value
    std::string phase;            // "", "cps" or "dps"
    int bits = -1;
    std::string pmax;             // single value or START:STEP:END (dBm)
    std::uint64_t draws = 1000;
    int jobs = 1;
    std::string out_path;
};

void add_common(CLI::App *cmd, CommonArgs &a, const char *default_out)
{
    cmd->add_option("--config", a.config_path, "config file (defaults built in)");
    cmd->add_option("--seed", a.seed, "experiment seed");
    cmd->add_option("--mode", a.mode, "objective: re, ee or se")
        ->check(CLI::IsMember({"re", "ee", "se"}));
    cmd->add_option("--beta-over-ptot", a.beta_over_ptot,
                    "blend weight as a fraction of the power budget");
    cmd->add_option("--phase", a.phase, "phase shifter model: cps or dps")
        ->check(CLI::IsMember({"cps", "dps"}));
    cmd->add_option("--bits", a.bits, "phase resolution in bits (dps)");
    cmd->add_option("--pmax", a.pmax,
                    "transmit budget in dBm: value or START:STEP:END");
    cmd->add_option("--draws", a.draws, "Monte-Carlo validation draws");
    cmd->add_option("--jobs", a.jobs, "parallel grid points")
        ->check(CLI::PositiveNumber);
    a.out_path = default_out;
    cmd->add_option("--out", a.out_path, "output CSV path");
}

[[noreturn]] void die(int code, const std::string &msg)
{
    std::fprintf(stderr, "risre: %s\n", msg.c_str());
    std::exit(code);
}

int status_exit_code(risre_status st)
{
    switch (st) {
    case RISRE_OK:
        return 0;
    case RISRE_ERR_PARSE:
        return 2;
    case RISRE_ERR_SOLVER:
        return 3;
    default:
        return 1;
    }
}

void check(risre_status st)
{
    if (st != RISRE_OK)
        die(status_exit_code(st), std::string(risre_status_str(st)) + ": " +
                                      risre_last_error());
}

using ConfigPtr = std::unique_ptr<risre_config, decltype(&risre_config_destroy)>;

ConfigPtr make_config(const CommonArgs &a)
{
    risre_config *raw = nullptr;
    if (a.config_path.empty())
        check(risre_config_create_default(&raw));
    else
        check(risre_config_load(a.config_path.c_str(), &raw));
    ConfigPtr cfg(raw, &risre_config_destroy);

    if (!a.phase.empty())
        check(risre_config_set(cfg.get(), "phase_mode", a.phase.c_str()));
    if (a.bits >= 0)
        check(risre_config_set(cfg.get(), "bits", std::to_string(a.bits).c_str()));
    if (a.beta_over_ptot >= 0.0)
        check(risre_config_set(cfg.get(), "beta_over_ptot",
                               std::to_string(a.beta_over_ptot).c_str()));
    return cfg;
}

// "a:b:c" -> {a, a+b, ..., <=c}; a single number makes a singleton grid.
std::vector<double> parse_grid(const std::string &spec)
{
    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto colon = spec.find(':', start);
        const std::string tok =
            spec.substr(start, colon == std::string::npos ? colon : colon - start);
        try {
            std::size_t pos = 0;
            parts.push_back(std::stod(tok, &pos));
            if (pos != tok.size())
                throw std::invalid_argument(tok);
        } catch (...) {
            die(1, "bad grid component '" + tok + "' in '" + spec + "'");
        }
        if (colon == std::string::npos)
            break;
        start = colon + 1;
    }
    if (parts.size() == 1)
        return parts;
    if (parts.size() != 3)
        die(1, "grid must be a single value or START:STEP:END: '" + spec + "'");
    const double a = parts[0], step = parts[1], b = parts[2];
    if (!(step > 0.0) || b < a)
        die(1, "grid needs STEP > 0 and END >= START: '" + spec + "'");
    std::vector<double> out;
    for (double v = a; v <= b + 1e-9; v += step)
        out.push_back(v);
    return out;
}

risre_solve_options make_options(const CommonArgs &a)
{
    risre_solve_options opts;
    risre_solve_options_init(&opts);
    opts.mc_draws = a.draws;
    return opts;
}

void apply_single_pmax(const ConfigPtr &cfg, const CommonArgs &a)
{
    if (a.pmax.empty())
        return;
    const auto grid = parse_grid(a.pmax);
    if (grid.size() != 1)
        die(1, "this command takes a single --pmax value");
    check(risre_config_set(cfg.get(), "p_max_dbm",
                           std::to_string(grid[0]).c_str()));
}

void print_summary(const char *what, const std::string &out_path)
{
    std::printf("%s; results written to %s\n", what, out_path.c_str());
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"resource-efficiency optimizer for RIS-aided MIMO uplinks"};
    app.require_subcommand(1);

    CommonArgs solve_args, conv_args, sweep_args, trade_args, val_args;

    auto *cmd_solve = app.add_subcommand("solve", "single optimization run");
    add_common(cmd_solve, solve_args, "risre_solve.csv");

    auto *cmd_conv =
        app.add_subcommand("convergence", "per-iteration trace of one run");
    add_common(cmd_conv, conv_args, "risre_convergence.csv");

    auto *cmd_sweep = app.add_subcommand("sweep", "one run per grid point");
    add_common(cmd_sweep, sweep_args, "risre_sweep.csv");
    std::vector<double> sweep_betas;
    std::vector<double> sweep_bits;
    cmd_sweep->add_option("--beta-grid", sweep_betas,
                          "sweep beta/P_tot over these values");
    cmd_sweep->add_option("--bits-grid", sweep_bits,
                          "sweep phase resolution over these bit counts");

    auto *cmd_trade = app.add_subcommand(
        "tradeoff", "efficiency tradeoff over blend weights and budgets");
    add_common(cmd_trade, trade_args, "risre_tradeoff.csv");
    std::vector<double> trade_betas{0.01, 0.5, 100.0};
    cmd_trade->add_option("--betas", trade_betas, "beta/P_tot ratios");

    auto *cmd_val = app.add_subcommand(
        "validate-de", "asymptotic-rate accuracy against Monte-Carlo");
    add_common(cmd_val, val_args, "risre_validate_de.csv");
    int val_seeds = 10;
    cmd_val->add_option("--seeds", val_seeds, "number of channel seeds")
        ->check(CLI::PositiveNumber);
    val_args.draws = 2000;

    CLI11_PARSE(app, argc, argv);

    if (cmd_solve->parsed()) {
        const auto &a = solve_args;
        auto cfg = make_config(a);
        apply_single_pmax(cfg, a);
        const auto opts = make_options(a);
        const risre_status st = risre_run_solve_csv(cfg.get(), a.mode.c_str(),
                                                    a.seed, &opts,
                                                    a.out_path.c_str());
        if (st != RISRE_OK)
            die(status_exit_code(st), risre_last_error());
        print_summary("solve finished", a.out_path);
        return 0;
    }

    if (cmd_conv->parsed()) {
        const auto &a = conv_args;
        auto cfg = make_config(a);
        apply_single_pmax(cfg, a);
        const auto opts = make_options(a);
        const risre_status st = risre_run_convergence_csv(
            cfg.get(), a.mode.c_str(), a.seed, &opts, a.out_path.c_str());
        if (st != RISRE_OK)
            die(status_exit_code(st), risre_last_error());
        print_summary("convergence trace finished", a.out_path);
        return 0;
    }

    if (cmd_sweep->parsed()) {
        const auto &a = sweep_args;
        auto cfg = make_config(a);
        const auto opts = make_options(a);

        std::string kind;
        std::vector<double> values;
        if (!a.pmax.empty()) {
            kind = "pmax_dbm";
            values = parse_grid(a.pmax);
        } else if (!sweep_betas.empty()) {
            kind = "beta_over_ptot";
            values = sweep_betas;
        } else if (!sweep_bits.empty()) {
            kind = "bits";
            values = sweep_bits;
        } else {
            die(1, "sweep needs --pmax, --beta-grid or --bits-grid");
        }
        const risre_status st = risre_run_sweep_csv(
            cfg.get(), a.mode.c_str(), kind.c_str(), values.data(), values.size(),
            a.seed, &opts, a.jobs, a.out_path.c_str());
        if (st != RISRE_OK)
            die(status_exit_code(st), risre_last_error());
        print_summary("sweep finished", a.out_path);
        return 0;
    }

    if (cmd_trade->parsed()) {
        const auto &a = trade_args;
        auto cfg = make_config(a);
        const auto opts = make_options(a);
        const std::vector<double> pmax_grid =
            parse_grid(a.pmax.empty() ? "0:5:40" : a.pmax);
        const risre_status st = risre_run_tradeoff_csv(
            cfg.get(), trade_betas.data(), trade_betas.size(), pmax_grid.data(),
            pmax_grid.size(), a.seed, &opts, a.jobs, a.out_path.c_str());
        if (st != RISRE_OK)
            die(status_exit_code(st), risre_last_error());
        print_summary("tradeoff finished", a.out_path);
        return 0;
    }

    // validate-de
    {
        const auto &a = val_args;
        auto cfg = make_config(a);
        apply_single_pmax(cfg, a);
        double worst = 0.0;
        const risre_status st =
            risre_validate_de(cfg.get(), a.seed, val_seeds, a.draws,
                              a.out_path.c_str(), &worst);
        if (st != RISRE_OK)
            die(status_exit_code(st), risre_last_error());
        std::printf("DE vs MC over %d seeds (%llu draws): max relative error "
                    "%.3f%%\n",
                    val_seeds, static_cast<unsigned long long>(a.draws),
                    100.0 * worst);
        print_summary("validation finished", a.out_path);
        return worst <= 0.05 ? 0 : 1;
    }
}
