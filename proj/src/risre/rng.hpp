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

#ifndef risre_rng_H
#define risre_rng_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace risre {

// Independent, order-insensitive random substreams. Every consumer derives
// its own key from (seed, purpose tag, indices...), so parallel evaluation
// cannot change any result.

std::uint64_t mix64(std::uint64_t x); // splitmix64 finalizer

std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts);

namespace tag {
// Purpose tags keeping unrelated substreams apart under a common seed.
inline constexpr std::uint64_t ris_bs_link = 0x48314c494e4b5ull;
inline constexpr std::uint64_t ut_correlation = 0x434f52520aull;
inline constexpr std::uint64_t channel_draw = 0x44524157ull;
inline constexpr std::uint64_t mc_validation = 0x4d435345ull;
inline constexpr std::uint64_t sweep_point = 0x53575045ull;
} // namespace tag

class Substream {
  public:
    explicit Substream(std::uint64_t key) : eng_(mix64(key)) {}

    // [0, 1)
    double uniform()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // (0, 1]; safe as a log() argument
    double uniform_open()
    {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // One Box-Muller pair: a + jb with a, b independent N(0,1).
    std::complex<double> gauss_pair()
    {
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    double gauss()
    {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const std::complex<double> p = gauss_pair();
        cached_ = p.imag();
        have_cached_ = true;
        return p.real();
    }

  private:
    std::mt19937_64 eng_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace risre

#endif
