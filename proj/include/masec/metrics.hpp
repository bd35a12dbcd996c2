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

#ifndef MASEC_METRICS_HPP
#define MASEC_METRICS_HPP

#include "masec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace masec
{
    /// Transmit beamformer W = [w_1 ... w_K] (N x K) with a total power budget.
    struct Beamformer
    {
        CMatrix W;
        double p_max = 0.0;

        double power() const { return W.squaredNorm(); }
        bool feasible(double slack = 1e-9) const { return power() <= p_max + slack; }
        Eigen::Index users() const { return W.cols(); }
    };

    /// SINR of stream k seen through channel h:
    /// |h^H w_k|^2 / (sum_{k' != k} |h^H w_k'|^2 + noise).
    inline double sinr(const Eigen::Ref<const CVector> &h, const CMatrix &W, Eigen::Index k, double noise)
    {
        double signal = 0.0, interference = 0.0;
        for (Eigen::Index j = 0; j < W.cols(); ++j)
        {
            const double p = std::norm(h.dot(W.col(j)));
            if (j == k) signal = p;
            else interference += p;
        }
        return signal / (interference + noise);
    }

    inline double sinr_bob(const ChannelRealization &ch, const Beamformer &bf, Eigen::Index k, double noise)
    {
        return sinr(ch.h_bob.col(k), bf.W, k, noise);
    }

    inline double sinr_eve(const ChannelRealization &ch, const Beamformer &bf, Eigen::Index m, Eigen::Index k,
                           double noise)
    {
        return sinr(ch.h_eve.col(m), bf.W, k, noise);
    }

    inline double rate(double sinr_value) { return std::log2(1.0 + sinr_value); }

    struct SecrecyReport
    {
        std::vector<double> rate_bob;               ///< [k]
        std::vector<std::vector<double>> rate_eve;  ///< [m][k]
        std::vector<double> margin;                 ///< rate_bob[k] - max_m rate_eve[m][k], unclipped
        std::vector<double> secrecy;                ///< max(margin, 0)
        std::size_t worst_k = 0;
        std::size_t best_m = 0;

        double worst_secrecy() const { return secrecy[worst_k]; }
        double worst_margin() const { return margin[worst_k]; }
        double bob_capacity() const { return rate_bob[worst_k]; }
        double eve_capacity() const { return rate_eve[best_m][worst_k]; }
    };

    /// Exhaustive worst-Bob / best-Eve evaluation. The worst Bob minimises the
    /// unclipped margin, which also minimises the clipped secrecy; ties go to
    /// the lowest index.
    inline SecrecyReport secrecy_report(const ChannelRealization &ch, const Beamformer &bf, double noise)
    {
        const auto K = static_cast<std::size_t>(ch.bobs());
        const auto M = static_cast<std::size_t>(ch.eves());
        SecrecyReport rep;
        rep.rate_bob.resize(K);
        rep.rate_eve.assign(M, std::vector<double>(K));
        rep.margin.resize(K);
        rep.secrecy.resize(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const auto kk = static_cast<Eigen::Index>(k);
            rep.rate_bob[k] = rate(sinr_bob(ch, bf, kk, noise));
            double eve_max = -1.0;
            for (std::size_t m = 0; m < M; ++m)
            {
                rep.rate_eve[m][k] = rate(sinr_eve(ch, bf, static_cast<Eigen::Index>(m), kk, noise));
                eve_max = std::max(eve_max, rep.rate_eve[m][k]);
            }
            rep.margin[k] = rep.rate_bob[k] - eve_max;
            rep.secrecy[k] = std::max(rep.margin[k], 0.0);
        }
        for (std::size_t k = 1; k < K; ++k)
            if (rep.margin[k] < rep.margin[rep.worst_k]) rep.worst_k = k;
        for (std::size_t m = 1; m < M; ++m)
            if (rep.rate_eve[m][rep.worst_k] > rep.rate_eve[rep.best_m][rep.worst_k]) rep.best_m = m;
        return rep;
    }

    /// Fixed-pair objective log2(1 + SINR_b) - log2(1 + SINR_e), no clipping.
    inline double objective_value(const ChannelRealization &ch, const Beamformer &bf, double noise, Eigen::Index k,
                                  Eigen::Index m)
    {
        return rate(sinr_bob(ch, bf, k, noise)) - rate(sinr_eve(ch, bf, m, k, noise));
    }
}

#endif // MASEC_METRICS_HPP
