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

// Shared fixtures for the unit tests.

#ifndef MASEC_TEST_UTIL_HPP
#define MASEC_TEST_UTIL_HPP

#include "masec/channel.hpp"
#include "masec/metrics.hpp"
#include "masec/rng.hpp"

#include <vector>

namespace masec::test
{
    inline CVector random_cvector(Eigen::Index n, Rng &rng, double var = 1.0)
    {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_normal(rng, var);
        return v;
    }

    inline CMatrix random_cmatrix(Eigen::Index rows, Eigen::Index cols, Rng &rng, double var = 1.0)
    {
        CMatrix m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j) m.col(j) = random_cvector(rows, rng, var);
        return m;
    }

    inline PathSet random_paths(std::size_t L, Rng &rng, LinkSide side = LinkSide::bob, double var = 1.0)
    {
        auto a = sample_path_angles(L, rng, side);
        return PathSet::from_angles(a.theta, a.phi, random_cvector(static_cast<Eigen::Index>(L), rng, var));
    }

    inline std::vector<Position3> random_positions(std::size_t n, Rng &rng, double spread)
    {
        std::vector<Position3> out;
        for (std::size_t i = 0; i < n; ++i)
            out.emplace_back(uniform(rng, -spread, spread), uniform(rng, -spread, spread), uniform(rng, -spread, spread));
        return out;
    }

    /// Beamformer with random entries scaled to a random fraction of p_max.
    inline Beamformer random_beamformer(Eigen::Index n, Eigen::Index k, double p_max, Rng &rng)
    {
        Beamformer bf{random_cmatrix(n, k, rng), p_max};
        bf.W *= std::sqrt(p_max * uniform(rng, 0.2, 1.0) / bf.power());
        return bf;
    }

    /// Channel model with random paths, Bobs and Eves; variances follow the
    /// usual path-loss law so SINRs are in a realistic range.
    inline ChannelModel random_model(std::size_t K, std::size_t M, std::size_t L, Rng &rng)
    {
        ChannelModel model;
        for (std::size_t k = 0; k < K; ++k)
        {
            const double dist = uniform(rng, 25.0, 35.0);
            model.bob_distance.push_back(dist);
            model.bob_positions.emplace_back(dist, 0.0, 0.0);
            model.bob_paths.push_back(random_paths(L, rng, LinkSide::bob, path_gain_variance(L, 30.0, dist, 2.0)));
        }
        model.eve_paths = random_paths(L, rng, LinkSide::eve, path_gain_variance(L, 30.0, 50.0, 2.0));
        for (std::size_t m = 0; m < M; ++m)
            model.eve_positions.emplace_back(uniform(rng, 48.0, 52.0), uniform(rng, -2.0, 2.0), 0.0);
        return model;
    }
}

#endif // MASEC_TEST_UTIL_HPP
