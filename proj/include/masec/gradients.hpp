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

#ifndef MASEC_GRADIENTS_HPP
#define MASEC_GRADIENTS_HPP

#include "masec/channel.hpp"
#include "masec/metrics.hpp"
#include "masec/rng.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace masec
{
    using Vector3cd = Eigen::Matrix<cplx, 3, 1>;
    using Matrix3Xcd = Eigen::Matrix<cplx, 3, Eigen::Dynamic>;

    inline constexpr double inv_ln2 = 1.0 / std::numbers::ln2;

    /// One draw of the path gains of the focused Bob link and the Eve link.
    struct GainDraw
    {
        CVector bob;
        CVector eve;
    };

    /// Per-path phase terms of the worst Bob and the selected virtual Eve for
    /// every antenna, kept separately from the path gains so that channels for
    /// fresh gain draws cost one small matrix-vector product, and a single
    /// antenna move only refreshes one row.
    class FocusedLink
    {
    public:
        FocusedLink(const ChannelModel &model, std::span<const Position3> positions, std::size_t k, std::size_t m)
            : k_(k), m_(m), lambda_(model.lambda), wavenumber_(wavenumber(model.lambda)),
              bob_(model.bob_paths.at(k)), eve_(model.eve_paths),
              receive_(receive_frv(model.eve_positions.at(m), model.eve_paths, model.lambda)),
              bob_var_(model.bob_gain_variance(k)), eve_var_(model.eve_gain_variance())
        {
            const auto N = static_cast<Eigen::Index>(positions.size());
            bob_rows_.resize(N, static_cast<Eigen::Index>(bob_.size()));
            eve_rows_.resize(N, static_cast<Eigen::Index>(eve_.size()));
            positions_.assign(positions.begin(), positions.end());
            for (std::size_t n = 0; n < positions.size(); ++n) refresh_row(n);
        }

        std::size_t bob() const { return k_; }
        std::size_t eve() const { return m_; }
        std::size_t antennas() const { return positions_.size(); }
        const Position3 &position(std::size_t n) const { return positions_[n]; }
        double bob_gain_variance() const { return bob_var_; }
        double eve_gain_variance() const { return eve_var_; }
        GainDraw nominal() const { return {bob_.gain, eve_.gain}; }

        void move_antenna(std::size_t n, const Position3 &p)
        {
            positions_[n] = p;
            refresh_row(n);
        }

        CVector h_bob(const CVector &gain) const { return bob_rows_ * gain; }
        CVector h_eve(const CVector &gain) const { return eve_rows_ * gain; }

        /// d conj(h_n) / d t_n for the Bob link (x, y, z).
        Vector3cd dconj_bob(std::size_t n, const CVector &gain) const
        {
            return partial_conj(bob_rows_, bob_.direction, n, gain);
        }

        /// d conj(h^e_n) / d t_n for the Eve link. The receive phase does not
        /// depend on t_n, so the same path-wise form applies.
        Vector3cd dconj_eve(std::size_t n, const CVector &gain) const
        {
            return partial_conj(eve_rows_, eve_.direction, n, gain);
        }

        /// Jacobian of h^H with respect to t_n (3 x N). Only column n is
        /// non-zero because no other channel entry depends on t_n.
        Matrix3Xcd jacobian_bob(std::size_t n, const CVector &gain) const
        {
            Matrix3Xcd J = Matrix3Xcd::Zero(3, static_cast<Eigen::Index>(antennas()));
            J.col(static_cast<Eigen::Index>(n)) = dconj_bob(n, gain);
            return J;
        }

        Matrix3Xcd jacobian_eve(std::size_t n, const CVector &gain) const
        {
            Matrix3Xcd J = Matrix3Xcd::Zero(3, static_cast<Eigen::Index>(antennas()));
            J.col(static_cast<Eigen::Index>(n)) = dconj_eve(n, gain);
            return J;
        }

    private:
        void refresh_row(std::size_t n)
        {
            const auto row = static_cast<Eigen::Index>(n);
            for (std::size_t l = 0; l < bob_.size(); ++l)
                bob_rows_(row, static_cast<Eigen::Index>(l)) = field_phasor(positions_[n], bob_.direction[l], lambda_);
            for (std::size_t u = 0; u < eve_.size(); ++u)
                eve_rows_(row, static_cast<Eigen::Index>(u)) = field_phasor(positions_[n], eve_.direction[u], lambda_) *
                                                               std::conj(receive_[static_cast<Eigen::Index>(u)]);
        }

        // h_n = sum_l g_l e^{j k t_n.p_l}  =>  d conj(h_n)/dt = conj(sum_l j k p_l g_l e^{j k t_n.p_l}).
        // Written with explicit trig this is k sum_l conj(g_l) p_l (-sin(ph) - j cos(ph)), i.e. the
        // path gain enters conjugated and the z component carries sin(theta) (the third entry of p_l).
        Vector3cd partial_conj(const CMatrix &rows, const std::vector<Eigen::Vector3d> &dir, std::size_t n,
                               const CVector &gain) const
        {
            Vector3cd d = Vector3cd::Zero();
            const auto row = static_cast<Eigen::Index>(n);
            for (std::size_t l = 0; l < dir.size(); ++l)
            {
                const cplx term = imag_unit * wavenumber_ * gain[static_cast<Eigen::Index>(l)] *
                                  rows(row, static_cast<Eigen::Index>(l));
                d += dir[l].cast<cplx>() * term;
            }
            return d.conjugate();
        }

        std::size_t k_, m_;
        double lambda_;
        double wavenumber_;
        PathSet bob_;
        PathSet eve_;
        CVector receive_; ///< receive field response of the selected Eve
        double bob_var_, eve_var_;
        std::vector<Position3> positions_;
        CMatrix bob_rows_;
        CMatrix eve_rows_;
    };

    namespace detail
    {
        struct StreamPowers
        {
            cplx own;            // h^H w_k
            double signal;       // |h^H w_k|^2
            double interference; // sum_{j != k} |h^H w_j|^2
        };

        inline StreamPowers stream_powers(const CVector &h, const CMatrix &W, Eigen::Index k)
        {
            StreamPowers s{0.0, 0.0, 0.0};
            for (Eigen::Index j = 0; j < W.cols(); ++j)
            {
                const cplx a = h.dot(W.col(j));
                if (j == k)
                {
                    s.own = a;
                    s.signal = std::norm(a);
                }
                else s.interference += std::norm(a);
            }
            return s;
        }

        // Gradient of log(1 + chi/alpha) in t_n, with chi = |h^H w_k|^2 and
        // alpha = interference + noise; dconj = d conj(h_n)/d t_n.
        inline Eigen::Vector3d log_sinr_gradient(const CVector &h, const Vector3cd &dconj, const CMatrix &W,
                                                 Eigen::Index n, Eigen::Index k, double noise)
        {
            double chi = 0.0, alpha = noise;
            Eigen::Vector3d dchi = Eigen::Vector3d::Zero(), dalpha = Eigen::Vector3d::Zero();
            for (Eigen::Index j = 0; j < W.cols(); ++j)
            {
                const cplx a = h.dot(W.col(j));
                // d|a|^2 = 2 Re(conj(a) da), da = d conj(h_n) * w_{n,j}
                const Eigen::Vector3d d = 2.0 * (std::conj(a) * (dconj * W(n, j))).real();
                if (j == k)
                {
                    chi = std::norm(a);
                    dchi = d;
                }
                else
                {
                    alpha += std::norm(a);
                    dalpha += d;
                }
            }
            const double X = alpha / (chi + alpha);
            const Eigen::Vector3d dratio = (dchi * alpha - dalpha * chi) / (alpha * alpha);
            return X * dratio;
        }
    }

    /// Gradient of the fixed-pair objective with respect to w_k, in the
    /// convention d/dRe(w) + j d/dIm(w) (= 2 d/dconj(w)); this is the
    /// steepest-ascent direction for w <- w + step * grad.
    inline CVector grad_w(const CVector &h_bob, const CVector &h_eve, const CMatrix &W, Eigen::Index k, double noise)
    {
        const auto b = detail::stream_powers(h_bob, W, k);
        const auto e = detail::stream_powers(h_eve, W, k);
        // The Eve denominator uses the Eve's own-stream power |h_e^H w_k|^2.
        const CVector gb = (2.0 * b.own / (b.interference + noise + b.signal)) * h_bob;
        const CVector ge = (2.0 * e.own / (e.interference + noise + e.signal)) * h_eve;
        return inv_ln2 * (gb - ge);
    }

    inline CVector grad_w(const ChannelRealization &ch, const Beamformer &bf, Eigen::Index k, Eigen::Index m,
                          double noise)
    {
        return grad_w(CVector(ch.h_bob.col(k)), CVector(ch.h_eve.col(m)), bf.W, k, noise);
    }

    /// Gradient of the fixed-pair objective with respect to antenna n's
    /// position for one gain draw.
    inline Eigen::Vector3d grad_t(const FocusedLink &link, const GainDraw &gains, const CMatrix &W, std::size_t n,
                                  double noise)
    {
        const auto k = static_cast<Eigen::Index>(link.bob());
        const auto nn = static_cast<Eigen::Index>(n);
        const CVector hb = link.h_bob(gains.bob);
        const CVector he = link.h_eve(gains.eve);
        const Eigen::Vector3d pb = detail::log_sinr_gradient(hb, link.dconj_bob(n, gains.bob), W, nn, k, noise);
        const Eigen::Vector3d pe = detail::log_sinr_gradient(he, link.dconj_eve(n, gains.eve), W, nn, k, noise);
        return inv_ln2 * (pb - pe);
    }

    inline Eigen::Vector3d grad_t(const ChannelModel &model, std::span<const Position3> positions,
                                  const Beamformer &bf, std::size_t n, std::size_t k, std::size_t m, double noise)
    {
        const FocusedLink link(model, positions, k, m);
        return grad_t(link, link.nominal(), bf.W, n, noise);
    }

    /// Central finite differences (f(x + h e_i) - f(x - h e_i)) / 2h.
    template <class Fn>
    Eigen::VectorXd fd_gradient(Fn &&f, const Eigen::VectorXd &x0, double step)
    {
        if (!(step > 0.0)) throw std::invalid_argument("fd_gradient: step must be positive");
        Eigen::VectorXd g(x0.size());
        Eigen::VectorXd x = x0;
        for (Eigen::Index i = 0; i < x0.size(); ++i)
        {
            x[i] = x0[i] + step;
            const double fp = f(x);
            x[i] = x0[i] - step;
            const double fm = f(x);
            x[i] = x0[i];
            if (!std::isfinite(fp) || !std::isfinite(fm))
                throw std::runtime_error("fd_gradient: non-finite objective at coordinate " + std::to_string(i));
            g[i] = (fp - fm) / (2.0 * step);
        }
        return g;
    }

    /// Arithmetic mean of `count` per-sample gradients, summed in sample order.
    template <class Fn>
    auto mc_average(std::size_t count, Fn &&sample_gradient) -> std::decay_t<decltype(sample_gradient(std::size_t{0}))>
    {
        if (count == 0) throw std::invalid_argument("mc_average: count must be >= 1");
        auto sum = sample_gradient(std::size_t{0});
        for (std::size_t i = 1; i < count; ++i) sum += sample_gradient(i);
        return sum / static_cast<double>(count);
    }

    enum class GainModel
    {
        resample, ///< fresh CN(0, var) gains per Monte-Carlo sample
        frozen    ///< always the nominal gains
    };

    /// Draws path gains for the focused link; angles and geometry stay fixed.
    class GainSampler
    {
    public:
        GainSampler(const FocusedLink &link, GainModel model)
            : nominal_(link.nominal()), bob_var_(link.bob_gain_variance()), eve_var_(link.eve_gain_variance()),
              model_(model)
        {
        }

        GainDraw operator()(Rng &rng) const
        {
            if (model_ == GainModel::frozen) return nominal_;
            GainDraw g{CVector(nominal_.bob.size()), CVector(nominal_.eve.size())};
            for (Eigen::Index l = 0; l < g.bob.size(); ++l) g.bob[l] = complex_normal(rng, bob_var_);
            for (Eigen::Index l = 0; l < g.eve.size(); ++l) g.eve[l] = complex_normal(rng, eve_var_);
            return g;
        }

        GainModel model() const { return model_; }

    private:
        GainDraw nominal_;
        double bob_var_, eve_var_;
        GainModel model_;
    };
}

#endif // MASEC_GRADIENTS_HPP
