// Copyright 2026 The qrestore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random streams and the random draws used by sampling and by the
// property checks (uniform reals, Haar-random qubit states and unitaries).

#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

#include "qrestore/complex_linalg.hpp"

namespace qrestore {

/// Random stream used throughout the library. Always explicitly seeded.
using Rng = std::mt19937_64;

/// Generators producing full 64-bit words, so uniform01 is bit-reproducible.
template <typename G>
concept Random64 = std::uniform_random_bit_generator<G> &&
                   (G::min() == 0) &&
                   (G::max() == std::numeric_limits<std::uint64_t>::max());

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for grid point (i, j) of a sweep, independent across points.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  std::uint64_t i,
                                                  std::uint64_t j) {
    return mix64(mix64(mix64(base) ^ i) ^ (j + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
template <Random64 G>
[[nodiscard]] double uniform01(G &g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (one value per two draws).
template <Random64 G>
[[nodiscard]] double standard_normal(G &g) {
    const double u1 = 1.0 - uniform01(g);  // (0, 1]
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

/// Haar-random single-qubit unitary: random SU(2) element times a phase.
template <Random64 G>
[[nodiscard]] CMat2 haar_unitary(G &g) {
    double q[4];
    double n = 0.0;
    do {
        n = 0.0;
        for (auto &x : q) {
            x = standard_normal(g);
            n += x * x;
        }
    } while (n == 0.0);
    n = std::sqrt(n);
    const cplx a(q[0] / n, q[1] / n);
    const cplx b(q[2] / n, q[3] / n);
    const cplx ph = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(g));
    return CMat2{a, b, -std::conj(b), std::conj(a)} * ph;
}

/// Matrix with independent standard complex Gaussian entries.
template <Random64 G>
[[nodiscard]] CMat2 ginibre(G &g) {
    CMat2 m;
    for (auto &x : m.a) {
        const double re = standard_normal(g);
        x = cplx(re, standard_normal(g));
    }
    return m;
}

} // namespace qrestore
