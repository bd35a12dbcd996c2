// SPDX-License-Identifier: Apache-2.0
//
// masec: movable-antenna secrecy-rate optimization library
// Copyright (C) 2026 The masec authors
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

#ifndef MASEC_RNG_HPP
#define MASEC_RNG_HPP

#include <complex>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace masec
{
    using Rng = std::mt19937_64;

    // SplitMix64 finalizer.
    inline std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Derives a sub-stream seed from a base seed and an ordered list of tags.
    /// Distinct tag lists give statistically independent engines, so every
    /// consumer (scenario draw, SA acceptance, Monte-Carlo gradient samples) can
    /// own a stream without coupling to the call order of the others.
    inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags)
    {
        std::uint64_t s = mix64(base);
        for (auto t : tags) s = mix64(s ^ mix64(t + 0x632be59bd9b4e019ULL));
        return s;
    }

    inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> tags)
    {
        return Rng(derive_seed(base, tags));
    }

    inline double uniform(Rng &rng, double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    /// Circularly-symmetric complex normal CN(0, variance).
    inline std::complex<double> complex_normal(Rng &rng, double variance)
    {
        std::normal_distribution<double> nd(0.0, std::sqrt(variance / 2.0));
        const double re = nd(rng);
        const double im = nd(rng);
        return {re, im};
    }

    // Stream tags.
    namespace stream
    {
        inline constexpr std::uint64_t scenario   = 0x5343454eULL;
        inline constexpr std::uint64_t eves       = 0x45564553ULL;
        inline constexpr std::uint64_t anneal     = 0x414e4e4cULL;
        inline constexpr std::uint64_t pga_w      = 0x50474157ULL;
        inline constexpr std::uint64_t pga_t      = 0x50474154ULL;
        inline constexpr std::uint64_t instance   = 0x494e5354ULL;
    }
}

#endif // MASEC_RNG_HPP
