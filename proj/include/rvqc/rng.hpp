// Copyright 2026 The rvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random numbers with a bit-exact definition across platforms.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Stream k of a base seed s is seeded with splitmix64(s + (k + 1) * 0x9E3779B97F4A7C15).
// Uniform doubles take the top 53 bits of one draw; normal variates use the
// Marsaglia polar method. The standard <random> distributions are avoided
// because their algorithms are implementation-defined.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rvqc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Well-known stream ids.
namespace streams {
inline constexpr std::uint64_t test_states = 0xFFFF0001ULL;
inline constexpr std::uint64_t bound_states = 0xFFFF0002ULL;
}  // namespace streams

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream `stream` derived from `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL));
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        const double x = lo + (hi - lo) * uniform();
        return x < hi ? x : std::nextafter(hi, lo);
    }

    /// Standard normal.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0, v = 0.0, s = 0.0;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rvqc
