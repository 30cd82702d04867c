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

#ifndef risre_config_io_H
#define risre_config_io_H

#include <string>

#include "risre/types.hpp"

namespace risre {

// Parse failure with position information for the CLI diagnostics.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string &msg, int line, std::string key)
        : std::runtime_error(msg), line_(line), key_(std::move(key))
    {
    }
    int line() const { return line_; }
    const std::string &key() const { return key_; }

  private:
    int line_;
    std::string key_;
};

// `key = value` lines with '#' comments. Powers carry a `_dbm` suffix and are
// converted to watts on load. Per-UT keys (n_k, xi, p_c_dbm, p_max_dbm) take
// either a scalar broadcast over all UTs or a comma list of length K.
// `beta_over_ptot` may be given instead of `beta`; it resolves against the
// parsed budget and the file round-trips through the canonical `beta`.
SystemConfig parse_config(const std::string &text);
SystemConfig load_config(const std::string &path);

std::string serialize_config(const SystemConfig &cfg);
void save_config(const SystemConfig &cfg, const std::string &path);

// Single key override with the same syntax as a config line.
void set_config_key(SystemConfig &cfg, const std::string &key,
                    const std::string &value);

std::string get_config_key(const SystemConfig &cfg, const std::string &key);

} // namespace risre

#endif
