// Copyright 2026 The vstats authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string_view>

namespace vstats {

/// Deterministic splitmix64 generator. The standard <random> engines are
/// portable, but the distributions are not; all draws used for sampling
/// decisions go through this type so that identical seeds give identical
/// byte streams on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t nextBelow(std::uint64_t n) { return next() % n; }

    /// Uniform double in [0, 1) with 53 random bits.
    double nextUnit() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::uint64_t state_;
};

/// FNV-1a, used to fold string identifiers into seed material.
inline std::uint64_t hashString(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Combines a base seed with per-stream identifiers so each clip gets an
/// independent, scheduling-invariant draw stream.
inline std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SeededRng rng(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
    return rng.next();
}

} // namespace vstats
