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

#ifndef risre_ao_H
#define risre_ao_H

#include <cstdint>
#include <string>
#include <vector>

#include "risre/metrics.hpp"
#include "risre/phase_opt.hpp"
#include "risre/power_alloc.hpp"

namespace risre {

// What the alternating optimization maximizes. The resource-efficiency blend
// uses the configured beta; ee drops the SE term (beta = 0); se makes the
// consumed power constant (xi_k = 0) so the blend reduces to the rate.
enum class Mode { re, ee, se };

Mode mode_from_string(const std::string &s);
const char *mode_to_string(Mode m);

SystemConfig apply_mode(SystemConfig cfg, Mode mode);

struct SolveOptions {
    double eps = 1e-4;       // outer stopping threshold (relative objective)
    int max_outer = 50;
    double de_eps = 1e-9;    // fixed-point tolerance (cheap, so kept tight)
    int bcd_max_iter = 100;
    GemmSchedule gemm;
    std::uint64_t mc_draws = 1000; // final Monte-Carlo validation; 0 skips it
    bool mc_each_iter = false;     // expensive; per-iteration validation
};

struct TraceRow {
    int iter = 0;
    double se_de = 0.0;
    double se_mc = arma::datum::nan; // filled when mc_each_iter is set
    double ee = 0.0;                 // true-config EE from the DE rate
    double re_obj = 0.0;             // the optimized (mode-applied) objective
    double f3 = 0.0;                 // power-step objective at this iteration
    double f5 = 0.0;                 // phase-step rate at this iteration
};

struct SolveReport {
    PowerAllocation alloc;
    PhaseVector phase;
    std::vector<TraceRow> trace;
    std::vector<std::vector<double>> f3_traces; // per outer iteration
    std::vector<std::vector<double>> f5_traces;
    int iterations = 0;
    bool converged = false;
    double wall_ms = 0.0;
    double se_de = 0.0;
    double se_mc = arma::datum::nan;
    double ee = 0.0;
    double re = 0.0;       // mode-applied objective at the final iterate
    double p_sum_w = 0.0;  // true-config consumed power
    std::string error;     // non-empty when a sub-solver aborted the run
};

// Alternating optimization: per outer iteration the transmit eigenbases are
// pinned to the channel's transmit-side bases, the deterministic equivalent
// is refreshed, the power allocation is updated by the quadratic transform,
// the auxiliaries are refreshed again, and the phase vector is updated by the
// WMMSE sweep. Stops when the relative objective change falls below eps.
SolveReport solve(const ChannelModel &model, const SystemConfig &cfg, Mode mode,
                  std::uint64_t seed, const SolveOptions &opts = {});

enum class BaselineScheme {
    identity_phi_opt_power = 1,  // fixed phases, optimized power
    identity_phi_equal_power = 2 // fixed phases, full equal-power budgets
};

SolveReport baseline(const ChannelModel &model, const SystemConfig &cfg,
                     BaselineScheme scheme, std::uint64_t seed,
                     const SolveOptions &opts = {});

struct GridSpec {
    enum class Kind { pmax_dbm, beta_over_ptot, bits };
    Kind kind = Kind::pmax_dbm;
    std::vector<double> values;
};

SystemConfig apply_grid_point(SystemConfig cfg, GridSpec::Kind kind, double value);

// One solve per grid point; per-point seeds are seed + index, the channel is
// shared. Failures are recorded in the report and the sweep continues.
// jobs > 1 runs points concurrently; reports come back in grid order.
std::vector<SolveReport> sweep(const SystemConfig &cfg, Mode mode,
                               const GridSpec &grid, std::uint64_t seed,
                               const SolveOptions &opts = {}, int jobs = 1);

// Blend-weight tradeoff grid: for every (ratio, budget) pair the weight is
// re-resolved against that point's total budget (beta = ratio * P_tot).
// Reports are returned ratio-major in grid order.
std::vector<SolveReport> tradeoff(const SystemConfig &cfg,
                                  const std::vector<double> &beta_over_ptot,
                                  const std::vector<double> &pmax_dbm,
                                  std::uint64_t seed, const SolveOptions &opts = {},
                                  int jobs = 1);

} // namespace risre

#endif
