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

#include "risre/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace risre {

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &v, int line, const std::string &key)
{
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty())
            return x;
    } catch (...) {
    }
    throw ConfigError("value '" + v + "' for key '" + key + "' is not a number",
                      line, key);
}

arma::uword parse_uint(const std::string &v, int line, const std::string &key)
{
    const double x = parse_double(v, line, key);
    if (x < 0.0 || x != std::floor(x) || x > 1e9)
        throw ConfigError("value '" + v + "' for key '" + key +
                              "' is not a nonnegative integer",
                          line, key);
    return static_cast<arma::uword>(x);
}

std::vector<std::string> split_list(const std::string &v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    if (out.empty())
        out.push_back("");
    return out;
}

// Scalar broadcast or comma list of length K.
arma::vec parse_per_ut(const std::string &v, arma::uword k, int line,
                       const std::string &key)
{
    const auto items = split_list(v);
    if (items.size() != 1 && items.size() != k)
        throw ConfigError("key '" + key + "' needs 1 or " + std::to_string(k) +
                              " comma-separated values",
                          line, key);
    arma::vec out(k);
    for (arma::uword i = 0; i < k; ++i)
        out(i) = parse_double(items[items.size() == 1 ? 0 : i], line, key);
    return out;
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt_vec(const arma::vec &v)
{
    bool uniform = true;
    for (arma::uword i = 1; i < v.n_elem; ++i)
        if (v(i) != v(0))
            uniform = false;
    if (uniform)
        return fmt(v(0));
    std::string out;
    for (arma::uword i = 0; i < v.n_elem; ++i) {
        if (i)
            out += ",";
        out += fmt(v(i));
    }
    return out;
}

arma::vec to_dbm(const arma::vec &w)
{
    arma::vec out(w.n_elem);
    for (arma::uword i = 0; i < w.n_elem; ++i)
        out(i) = watt_to_dbm(w(i));
    return out;
}

void apply_key(SystemConfig &cfg, const std::string &key, const std::string &value,
               int line)
{
    if (key == "k") {
        const arma::uword k = parse_uint(value, line, key);
        if (k == 0)
            throw ConfigError("k must be positive", line, key);
        cfg.num_uts = k;
        // Re-broadcast existing per-UT settings to the new count.
        cfg.ut_antennas.assign(k, cfg.ut_antennas.empty() ? 2 : cfg.ut_antennas[0]);
        const auto rebroadcast = [k](arma::vec &v) {
            const double head = v.n_elem ? v(0) : 0.0;
            v.set_size(k);
            v.fill(head);
        };
        rebroadcast(cfg.amp_inefficiency);
        rebroadcast(cfg.circuit_power_w);
        rebroadcast(cfg.pmax_w);
    } else if (key == "n_k") {
        const auto items = split_list(value);
        if (items.size() != 1 && items.size() != cfg.num_uts)
            throw ConfigError("n_k needs 1 or " + std::to_string(cfg.num_uts) +
                                  " values",
                              line, key);
        cfg.ut_antennas.resize(cfg.num_uts);
        for (arma::uword i = 0; i < cfg.num_uts; ++i)
            cfg.ut_antennas[i] =
                parse_uint(items[items.size() == 1 ? 0 : i], line, key);
    } else if (key == "m") {
        cfg.bs_antennas = parse_uint(value, line, key);
    } else if (key == "n_r") {
        cfg.ris_elements = parse_uint(value, line, key);
    } else if (key == "bandwidth_hz") {
        cfg.bandwidth_hz = parse_double(value, line, key);
    } else if (key == "sigma2_dbm") {
        cfg.noise_w = dbm_to_watt(parse_double(value, line, key));
    } else if (key == "sigma2_w") {
        cfg.noise_w = parse_double(value, line, key);
    } else if (key == "xi") {
        cfg.amp_inefficiency = parse_per_ut(value, cfg.num_uts, line, key);
    } else if (key == "p_c_dbm") {
        cfg.circuit_power_w = arma::exp10((parse_per_ut(value, cfg.num_uts, line, key) - 30.0) / 10.0);
    } else if (key == "p_c_w") {
        cfg.circuit_power_w = parse_per_ut(value, cfg.num_uts, line, key);
    } else if (key == "p_bs_dbm") {
        cfg.bs_power_w = dbm_to_watt(parse_double(value, line, key));
    } else if (key == "p_bs_w") {
        cfg.bs_power_w = parse_double(value, line, key);
    } else if (key == "p_s_b1_dbm") {
        cfg.ris_elem_power_b1_w = dbm_to_watt(parse_double(value, line, key));
    } else if (key == "p_s_b2_dbm") {
        cfg.ris_elem_power_b2_w = dbm_to_watt(parse_double(value, line, key));
    } else if (key == "p_s_cps_dbm") {
        cfg.ris_elem_power_cps_w = dbm_to_watt(parse_double(value, line, key));
    } else if (key == "p_max_dbm") {
        cfg.pmax_w = arma::exp10((parse_per_ut(value, cfg.num_uts, line, key) - 30.0) / 10.0);
    } else if (key == "p_max_w") {
        cfg.pmax_w = parse_per_ut(value, cfg.num_uts, line, key);
    } else if (key == "beta") {
        cfg.beta = parse_double(value, line, key);
    } else if (key == "phase_mode") {
        if (value == "cps")
            cfg.phase_mode = PhaseMode::cps;
        else if (value == "dps")
            cfg.phase_mode = PhaseMode::dps;
        else
            throw ConfigError("phase_mode must be 'cps' or 'dps'", line, key);
    } else if (key == "bits") {
        cfg.bits = static_cast<int>(parse_uint(value, line, key));
    } else if (key == "rho_min") {
        cfg.rho_min = parse_double(value, line, key);
    } else if (key == "rho_max") {
        cfg.rho_max = parse_double(value, line, key);
    } else {
        throw ConfigError("unknown key '" + key + "'", line, key);
    }
}

} // namespace

SystemConfig parse_config(const std::string &text)
{
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> entries;

    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty())
            continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no, "");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key", line_no, "");
        if (value.empty())
            throw ConfigError("empty value for key '" + key + "'", line_no, key);
        if (!entries.emplace(key, Entry{value, line_no}).second)
            throw ConfigError("duplicate key '" + key + "'", line_no, key);
    }

    if (entries.count("beta") && entries.count("beta_over_ptot"))
        throw ConfigError("'beta' and 'beta_over_ptot' are mutually exclusive",
                          entries["beta_over_ptot"].line, "beta_over_ptot");

    SystemConfig cfg;
    // UT count first so per-UT lists validate against it; the blend weight
    // resolves last because it may reference the assembled budget.
    if (auto it = entries.find("k"); it != entries.end()) {
        apply_key(cfg, "k", it->second.value, it->second.line);
        entries.erase(it);
    }
    Entry beta_ratio{"", 0};
    if (auto it = entries.find("beta_over_ptot"); it != entries.end()) {
        beta_ratio = it->second;
        entries.erase(it);
    }
    for (const auto &[key, entry] : entries)
        apply_key(cfg, key, entry.value, entry.line);
    if (beta_ratio.line > 0) {
        const double ratio =
            parse_double(beta_ratio.value, beta_ratio.line, "beta_over_ptot");
        if (!(ratio >= 0.0))
            throw ConfigError("beta_over_ptot must be >= 0", beta_ratio.line,
                              "beta_over_ptot");
        cfg.beta = ratio * cfg.total_budget_w();
    }

    try {
        cfg.validate();
    } catch (const std::exception &e) {
        throw ConfigError(e.what(), 0, "");
    }
    return cfg;
}

SystemConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SystemConfig &cfg)
{
    std::ostringstream out;
    out << "k = " << cfg.num_uts << "\n";
    out << "n_k = ";
    bool uniform = true;
    for (auto nk : cfg.ut_antennas)
        if (nk != cfg.ut_antennas[0])
            uniform = false;
    if (uniform) {
        out << cfg.ut_antennas[0];
    } else {
        for (std::size_t i = 0; i < cfg.ut_antennas.size(); ++i)
            out << (i ? "," : "") << cfg.ut_antennas[i];
    }
    out << "\n";
    out << "m = " << cfg.bs_antennas << "\n";
    out << "n_r = " << cfg.ris_elements << "\n";
    out << "bandwidth_hz = " << fmt(cfg.bandwidth_hz) << "\n";
    out << "sigma2_dbm = " << fmt(watt_to_dbm(cfg.noise_w)) << "\n";
    out << "xi = " << fmt_vec(cfg.amp_inefficiency) << "\n";
    out << "p_c_dbm = " << fmt_vec(to_dbm(cfg.circuit_power_w)) << "\n";
    out << "p_bs_dbm = " << fmt(watt_to_dbm(cfg.bs_power_w)) << "\n";
    out << "p_s_b1_dbm = " << fmt(watt_to_dbm(cfg.ris_elem_power_b1_w)) << "\n";
    out << "p_s_b2_dbm = " << fmt(watt_to_dbm(cfg.ris_elem_power_b2_w)) << "\n";
    out << "p_s_cps_dbm = " << fmt(watt_to_dbm(cfg.ris_elem_power_cps_w)) << "\n";
    out << "p_max_dbm = " << fmt_vec(to_dbm(cfg.pmax_w)) << "\n";
    out << "beta = " << fmt(cfg.beta) << "\n";
    out << "phase_mode = " << (cfg.phase_mode == PhaseMode::cps ? "cps" : "dps")
        << "\n";
    out << "bits = " << cfg.bits << "\n";
    out << "rho_min = " << fmt(cfg.rho_min) << "\n";
    out << "rho_max = " << fmt(cfg.rho_max) << "\n";
    return out.str();
}

void save_config(const SystemConfig &cfg, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write config file '" + path + "'");
    out << serialize_config(cfg);
}

void set_config_key(SystemConfig &cfg, const std::string &key,
                    const std::string &value)
{
    if (key == "beta_over_ptot") {
        const double ratio = parse_double(value, 0, key);
        if (!(ratio >= 0.0))
            throw ConfigError("beta_over_ptot must be >= 0", 0, key);
        cfg.beta = ratio * cfg.total_budget_w();
        return;
    }
    apply_key(cfg, key, value, 0);
}

std::string get_config_key(const SystemConfig &cfg, const std::string &key)
{
    // Serialize-and-scan keeps one canonical formatting path.
    const std::string text = serialize_config(cfg);
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        if (trim(line.substr(0, eq)) == key)
            return trim(line.substr(eq + 1));
    }
    throw std::invalid_argument("unknown config key '" + key + "'");
}

} // namespace risre
