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

#include "risre/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace risre {

namespace {

std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace

SummaryRow summary_row(const std::string &experiment, double grid_value,
                       const SolveReport &report)
{
    SummaryRow r;
    r.experiment = experiment;
    r.grid_value = grid_value;
    r.se_de = report.se_de;
    r.se_mc = report.se_mc;
    r.ee = report.ee;
    r.re = report.re;
    r.p_sum_w = report.p_sum_w;
    r.outer_iters = report.iterations;
    r.wall_ms = report.wall_ms;
    r.converged = report.converged;
    return r;
}

std::string render_summary_csv(const std::vector<SummaryRow> &rows)
{
    std::string out =
        "experiment,grid_value,se_de,se_mc,ee,re,p_sum_w,outer_iters,wall_ms,"
        "converged\n";
    for (const auto &r : rows) {
        out += r.experiment + ',' + num(r.grid_value) + ',' + num(r.se_de) + ',' +
               num(r.se_mc) + ',' + num(r.ee) + ',' + num(r.re) + ',' +
               num(r.p_sum_w) + ',' + std::to_string(r.outer_iters) + ',' +
               num(r.wall_ms) + ',' + (r.converged ? "1" : "0") + '\n';
    }
    return out;
}

void write_summary_csv(const std::string &path, const std::vector<SummaryRow> &rows)
{
    write_file(path, render_summary_csv(rows));
}

std::string render_trace_csv(const std::string &experiment, const SolveReport &report)
{
    std::string out = "experiment,iter,se_de,se_mc,ee,re,f3,f5\n";
    for (const auto &row : report.trace) {
        out += experiment + ',' + std::to_string(row.iter) + ',' + num(row.se_de) +
               ',' + num(row.se_mc) + ',' + num(row.ee) + ',' + num(row.re_obj) +
               ',' + num(row.f3) + ',' + num(row.f5) + '\n';
    }
    return out;
}

void write_trace_csv(const std::string &path, const std::string &experiment,
                     const SolveReport &report)
{
    write_file(path, render_trace_csv(experiment, report));
}

} // namespace risre
