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

#ifndef MASEC_CHANNEL_HPP
#define MASEC_CHANNEL_HPP

#include "masec/geometry.hpp"
#include "masec/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace masec
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr cplx imag_unit{0.0, 1.0};

    /// Unit direction [cos(theta)cos(phi), cos(theta)sin(phi), sin(theta)].
    inline Eigen::Vector3d direction_vector(double theta, double phi)
    {
        const double ct = std::cos(theta);
        return {ct * std::cos(phi), ct * std::sin(phi), std::sin(theta)};
    }

    inline double wavenumber(double lambda) { return 2.0 * pi / lambda; }

    /// Far-field propagation paths of one link: angles, unit directions and
    /// complex path gains. Directions are always derived from the angles.
    struct PathSet
    {
        std::vector<double> theta;
        std::vector<double> phi;
        std::vector<Eigen::Vector3d> direction;
        CVector gain;

        static PathSet from_angles(std::vector<double> theta, std::vector<double> phi, CVector gain)
        {
            if (theta.empty() || theta.size() != phi.size() || static_cast<std::size_t>(gain.size()) != theta.size())
                throw std::invalid_argument("PathSet: angle and gain lists must be non-empty and equally long");
            PathSet ps{std::move(theta), std::move(phi), {}, std::move(gain)};
            ps.direction.reserve(ps.theta.size());
            for (std::size_t l = 0; l < ps.theta.size(); ++l)
                ps.direction.push_back(direction_vector(ps.theta[l], ps.phi[l]));
            return ps;
        }

        std::size_t size() const { return theta.size(); }
    };

    enum class LinkSide
    {
        bob, ///< theta, phi uniform on [-pi/2, pi/2]
        eve  ///< theta uniform on [0, pi], phi uniform on [-pi/2, pi/2]
    };

    struct PathAngles
    {
        std::vector<double> theta;
        std::vector<double> phi;
    };

    inline PathAngles sample_path_angles(std::size_t L, Rng &rng, LinkSide side)
    {
        if (L == 0) throw std::invalid_argument("sample_path_angles: L must be >= 1");
        PathAngles a;
        a.theta.reserve(L);
        a.phi.reserve(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            a.theta.push_back(side == LinkSide::bob ? uniform(rng, -pi / 2, pi / 2) : uniform(rng, 0.0, pi));
            a.phi.push_back(uniform(rng, -pi / 2, pi / 2));
        }
        return a;
    }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    /// Per-path gain variance (g0 / L) * dist^-alpha.
    inline double path_gain_variance(std::size_t L, double g0_db, double dist, double alpha)
    {
        if (L == 0) throw std::invalid_argument("path gain variance: L must be >= 1");
        if (!(dist > 0.0)) throw std::invalid_argument("path gain variance: distance must be positive");
        return db_to_linear(g0_db) / static_cast<double>(L) * std::pow(dist, -alpha);
    }

    inline CVector sample_path_gains(std::size_t L, double g0_db, double dist, double alpha, Rng &rng)
    {
        const double var = path_gain_variance(L, g0_db, dist, alpha);
        CVector g(static_cast<Eigen::Index>(L));
        for (Eigen::Index l = 0; l < g.size(); ++l) g[l] = complex_normal(rng, var);
        return g;
    }

    /// exp(j (2 pi / lambda) t.p). The phase reaches ~1e4 rad for points tens
    /// of meters away, where a double-precision phase is only good to ~1e-12
    /// rad, so it is formed and reduced modulo 2 pi in extended precision.
    inline cplx field_phasor(const Position3 &t, const Eigen::Vector3d &p, double lambda)
    {
        constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
        const long double dot = static_cast<long double>(t.x()) * p.x() + static_cast<long double>(t.y()) * p.y() +
                                static_cast<long double>(t.z()) * p.z();
        const long double phase = std::remainder(two_pi * dot / static_cast<long double>(lambda), two_pi);
        return std::polar(1.0, static_cast<double>(phase));
    }

    /// Transmit field-response vector of one antenna: entries exp(j k t.p_l).
    inline CVector transmit_frv(const Position3 &t, const PathSet &paths, double lambda)
    {
        CVector g(static_cast<Eigen::Index>(paths.size()));
        for (std::size_t l = 0; l < paths.size(); ++l)
            g[static_cast<Eigen::Index>(l)] = field_phasor(t, paths.direction[l], lambda);
        return g;
    }

    /// Field-response matrix G (L x N), one transmit FRV per column.
    inline CMatrix transmit_frm(std::span<const Position3> positions, const PathSet &paths, double lambda)
    {
        CMatrix G(static_cast<Eigen::Index>(paths.size()), static_cast<Eigen::Index>(positions.size()));
        for (std::size_t n = 0; n < positions.size(); ++n)
            G.col(static_cast<Eigen::Index>(n)) = transmit_frv(positions[n], paths, lambda);
        return G;
    }

    /// Bob channel h = G^T Sigma^T f with an all-ones receive vector f.
    inline CVector bob_channel(std::span<const Position3> positions, const PathSet &paths, double lambda)
    {
        const CMatrix G = transmit_frm(positions, paths, lambda);
        const CVector f = CVector::Ones(static_cast<Eigen::Index>(paths.size()));
        return G.transpose() * paths.gain.asDiagonal() * f;
    }

    /// Eve receive field-response vector f^e(r): entries exp(j k r.p_u).
    inline CVector receive_frv(const Position3 &r, const PathSet &paths, double lambda)
    {
        return transmit_frv(r, paths, lambda);
    }

    /// Eve channel h = ((f^e)^H Sigma G)^T. The conjugated receive vector puts
    /// the receive phase with a minus sign: exp(j k (t.p - r.p)).
    inline CVector eve_channel(std::span<const Position3> positions, const Position3 &r_m, const PathSet &paths,
                               double lambda)
    {
        const CMatrix G = transmit_frm(positions, paths, lambda);
        const CVector f = receive_frv(r_m, paths, lambda);
        return (f.adjoint() * paths.gain.asDiagonal() * G).transpose();
    }

    /// Complete draw of all propagation quantities of one scenario. Geometry of
    /// the transmit array is not part of it, so one model can be evaluated for
    /// several layouts (common random numbers across array kinds).
    struct ChannelModel
    {
        double lambda = 0.0107;
        std::vector<PathSet> bob_paths;     ///< one per Bob
        PathSet eve_paths;                  ///< shared by all virtual Eves
        std::vector<Position3> eve_positions;
        std::vector<Position3> bob_positions;
        std::vector<double> bob_distance;
        double eve_distance = 50.0;
        double g0_db = 30.0;
        double alpha = 2.0;

        std::size_t bobs() const { return bob_paths.size(); }
        std::size_t eves() const { return eve_positions.size(); }
        std::size_t paths() const { return eve_paths.size(); }

        double bob_gain_variance(std::size_t k) const
        {
            return path_gain_variance(bob_paths[k].size(), g0_db, bob_distance[k], alpha);
        }
        double eve_gain_variance() const { return path_gain_variance(eve_paths.size(), g0_db, eve_distance, alpha); }
    };

    /// Bob and virtual-Eve channel vectors for one layout: columns are users.
    struct ChannelRealization
    {
        CMatrix h_bob; ///< N x K
        CMatrix h_eve; ///< N x M

        Eigen::Index antennas() const { return h_bob.rows(); }
        Eigen::Index bobs() const { return h_bob.cols(); }
        Eigen::Index eves() const { return h_eve.cols(); }
    };

    inline ChannelRealization realize(const ChannelModel &model, std::span<const Position3> positions)
    {
        const auto N = static_cast<Eigen::Index>(positions.size());
        ChannelRealization ch{CMatrix(N, static_cast<Eigen::Index>(model.bobs())),
                              CMatrix(N, static_cast<Eigen::Index>(model.eves()))};
        for (std::size_t k = 0; k < model.bobs(); ++k)
            ch.h_bob.col(static_cast<Eigen::Index>(k)) = bob_channel(positions, model.bob_paths[k], model.lambda);
        for (std::size_t m = 0; m < model.eves(); ++m)
            ch.h_eve.col(static_cast<Eigen::Index>(m)) =
                eve_channel(positions, model.eve_positions[m], model.eve_paths, model.lambda);
        return ch;
    }
}

#endif // MASEC_CHANNEL_HPP
