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

#ifndef risre_csv_H
#define risre_csv_H

#include <string>
#include <vector>

#include "risre/ao.hpp"

namespace risre {

// One experiment result. Column order is part of the file contract:
// experiment,grid_value,se_de,se_mc,ee,re,p_sum_w,outer_iters,wall_ms,converged
struct SummaryRow {
    std::string experiment;
    double grid_value = 0.0;
    double se_de = 0.0;
    double se_mc = 0.0;
    double ee = 0.0;
    double re = 0.0;
    double p_sum_w = 0.0;
    int outer_iters = 0;
    double wall_ms = 0.0;
    bool converged = false;
};

SummaryRow summary_row(const std::string &experiment, double grid_value,
                       const SolveReport &report);

std::string render_summary_csv(const std::vector<SummaryRow> &rows);
void write_summary_csv(const std::string &path, const std::vector<SummaryRow> &rows);

// Per-iteration trace: experiment,iter,se_de,se_mc,ee,re,f3,f5
std::string render_trace_csv(const std::string &experiment, const SolveReport &report);
void write_trace_csv(const std::string &path, const std::string &experiment,
                     const SolveReport &report);

} // namespace risre

#endif
