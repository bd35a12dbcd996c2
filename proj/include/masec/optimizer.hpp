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

#ifndef MASEC_OPTIMIZER_HPP
#define MASEC_OPTIMIZER_HPP

#include "masec/channel.hpp"
#include "masec/geometry.hpp"
#include "masec/gradients.hpp"
#include "masec/metrics.hpp"
#include "masec/rng.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace masec
{
    /// Parameters of the simulated-annealing / projected-gradient stack.
    struct SaPgaConfig
    {
        double initial_temperature = 1.0;
        double cooling = 0.9;
        double step_w = 0.01;
        double step_t = 0.001;
        double tol_w = 0.005;
        double tol_t = 1e-4;
        std::size_t outer_iterations = 1000;
        std::size_t inner_iterations = 1000;
        std::size_t mc_w = 10;
        std::size_t mc_t = 10;
        double adagrad_eps = 1e-8;
        bool greedy = false; ///< never accept a worse candidate
        GainModel gain_model = GainModel::resample;
    };

    /// AdaGrad with one accumulator per real coordinate.
    class AdaGrad
    {
    public:
        AdaGrad(Eigen::Index dim, double step, double eps)
            : accumulator_(Eigen::VectorXd::Zero(dim)), step_(step), eps_(eps)
        {
        }

        Eigen::VectorXd step(const Eigen::VectorXd &grad)
        {
            accumulator_ += grad.cwiseAbs2();
            return effective_step().cwiseProduct(grad);
        }

        Eigen::VectorXd effective_step() const
        {
            return step_ * (accumulator_.array() + eps_).rsqrt().matrix();
        }

        const Eigen::VectorXd &accumulator() const { return accumulator_; }

    private:
        Eigen::VectorXd accumulator_;
        double step_;
        double eps_;
    };

    struct PgaStats
    {
        std::size_t iterations = 0;
        std::size_t projections = 0;         ///< power projections (beamformer) or rejected moves (positions)
        double max_projection_residual = 0;  ///< max |tr(WW^H) - P_max| right after a power projection
        bool aborted = false;                ///< a non-finite gradient stopped an inner loop
    };

    /// Equal-power maximum-ratio transmission: w_k = sqrt(P/K) h_k / |h_k|.
    inline Beamformer init_beamformer(const ChannelRealization &ch, double p_max)
    {
        const Eigen::Index N = ch.antennas(), K = ch.bobs();
        Beamformer bf{CMatrix(N, K), p_max};
        const double amp = std::sqrt(p_max / static_cast<double>(K));
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const double nrm = ch.h_bob.col(k).norm();
            if (nrm > 0.0 && std::isfinite(nrm)) bf.W.col(k) = amp * ch.h_bob.col(k) / nrm;
            else bf.W.col(k) = CVector::Constant(N, cplx(amp / std::sqrt(static_cast<double>(N)), 0.0));
        }
        return bf;
    }

    /// Projected gradient ascent on the worst Bob's beamforming column.
    /// Only column link.bob() changes. When the updated column pushes the
    /// total power above P_max it is rescaled so that tr(WW^H) = P_max.
    inline Beamformer pga_w(const FocusedLink &link, const GainSampler &sampler, Beamformer bf, double noise,
                            const SaPgaConfig &cfg, Rng &rng, PgaStats *stats = nullptr)
    {
        const auto k = static_cast<Eigen::Index>(link.bob());
        const Eigen::Index N = bf.W.rows();
        AdaGrad ada(2 * N, cfg.step_w, cfg.adagrad_eps);
        Eigen::VectorXd stacked(2 * N);

        for (std::size_t v = 0; v < cfg.inner_iterations; ++v)
        {
            const CVector g = mc_average(cfg.mc_w, [&](std::size_t) {
                const GainDraw d = sampler(rng);
                return grad_w(link.h_bob(d.bob), link.h_eve(d.eve), bf.W, k, noise);
            });
            if (stats) ++stats->iterations;
            if (!g.allFinite())
            {
                if (stats) stats->aborted = true;
                break;
            }
            stacked << g.real(), g.imag();
            const Eigen::VectorXd delta = ada.step(stacked);

            const CVector previous = bf.W.col(k);
            CVector next = previous;
            next.real() += delta.head(N);
            next.imag() += delta.tail(N);

            const double others = bf.power() - previous.squaredNorm();
            const double q = next.squaredNorm();
            if (others + q > bf.p_max)
            {
                const double budget = std::max(bf.p_max - others, 0.0);
                next *= (q > 0.0 ? std::sqrt(budget / q) : 0.0);
                bf.W.col(k) = next;
                if (stats)
                {
                    ++stats->projections;
                    stats->max_projection_residual =
                        std::max(stats->max_projection_residual, std::abs(bf.power() - bf.p_max));
                }
            }
            else bf.W.col(k) = next;

            if ((next - previous).norm() < cfg.tol_w) break;
        }
        return bf;
    }

    /// Antenna-by-antenna projected gradient ascent on the movable positions,
    /// in index order. Moves that cannot be made feasible are rejected.
    inline ArrayLayout pga_t(FocusedLink &link, const GainSampler &sampler, ArrayLayout layout, const Beamformer &bf,
                             double noise, const SaPgaConfig &cfg, Rng &rng, PgaStats *stats = nullptr)
    {
        for (std::size_t n = 0; n < layout.size(); ++n)
        {
            if (!layout.movable[n]) continue;
            AdaGrad ada(3, cfg.step_t, cfg.adagrad_eps);
            for (std::size_t v = 0; v < cfg.inner_iterations; ++v)
            {
                const Eigen::Vector3d g = mc_average(cfg.mc_t, [&](std::size_t) {
                    return grad_t(link, sampler(rng), bf.W, n, noise);
                });
                if (stats) ++stats->iterations;
                if (!g.allFinite())
                {
                    if (stats) stats->aborted = true;
                    break;
                }
                const Position3 current = layout.positions[n];
                const Position3 candidate = current + ada.step(g);
                const auto projected = project_position(layout, n, candidate);
                if (!projected && stats) ++stats->projections;
                const Position3 next = projected.value_or(current);
                layout.positions[n] = next;
                link.move_antenna(n, next);
                if ((next - current).norm() < cfg.tol_t) break;
            }
        }
        return layout;
    }

    /// Metropolis rule: always accept improvements, otherwise accept with
    /// probability exp((r_new - r_prev) / temperature). A non-positive
    /// temperature never accepts a worse or equal candidate.
    inline bool metropolis_accept(double r_new, double r_prev, double temperature, Rng &rng)
    {
        if (r_new > r_prev) return true;
        if (!(temperature > 0.0)) return false;
        return uniform(rng, 0.0, 1.0) < std::exp((r_new - r_prev) / temperature);
    }

    /// A feasible (layout, beamformer) pair and its worst-user evaluation.
    struct Solution
    {
        ArrayLayout layout;
        Beamformer bf;
        double objective = 0.0; ///< min_k (R_b - max_m R_e), unclipped
        double secrecy = 0.0;   ///< max(objective, 0)
        std::size_t worst_k = 0;
        std::size_t best_m = 0;
    };

    inline Solution evaluate(const ChannelModel &model, ArrayLayout layout, Beamformer bf, double noise)
    {
        const auto ch = realize(model, layout.positions);
        const auto rep = secrecy_report(ch, bf, noise);
        return {std::move(layout), std::move(bf), rep.worst_margin(), rep.worst_secrecy(), rep.worst_k, rep.best_m};
    }

    struct TraceRecord
    {
        std::size_t iter;
        double objective;   ///< candidate objective (row 0: the initial solution)
        bool accepted;
        double temperature; ///< temperature used for the acceptance decision
    };

    struct SaResult
    {
        Solution best;
        Solution current;
        std::vector<TraceRecord> trace;
        PgaStats w_stats;
        PgaStats t_stats;
        std::size_t accepted = 0;
    };

    /// Called once per outer iteration with the trace row and the candidate.
    using SaObserver = std::function<void(const TraceRecord &, const Solution &)>;

    /// Simulated annealing around alternating beamformer / position PGA.
    /// (worst Bob, best Eve) are re-selected from the current state at the top
    /// of every outer iteration; a rejected candidate leaves the state as is.
    inline SaResult sa_pga(const ChannelModel &model, const Solution &initial, double noise, const SaPgaConfig &cfg,
                           std::uint64_t seed, const SaObserver &observer = {})
    {
        SaResult res{initial, initial, {}, {}, {}, 0};
        res.trace.reserve(cfg.outer_iterations + 1);
        double temperature = cfg.greedy ? 0.0 : cfg.initial_temperature;
        res.trace.push_back({0, initial.objective, true, temperature});
        Rng anneal = make_rng(seed, {stream::anneal});

        for (std::size_t it = 1; it <= cfg.outer_iterations; ++it)
        {
            const Solution &cur = res.current;
            FocusedLink link(model, cur.layout.positions, cur.worst_k, cur.best_m);
            const GainSampler sampler(link, cfg.gain_model);
            Rng rw = make_rng(seed, {stream::pga_w, it});
            Rng rt = make_rng(seed, {stream::pga_t, it});

            Beamformer w_op = pga_w(link, sampler, cur.bf, noise, cfg, rw, &res.w_stats);
            ArrayLayout t_op = pga_t(link, sampler, cur.layout, w_op, noise, cfg, rt, &res.t_stats);
            Solution cand = evaluate(model, std::move(t_op), std::move(w_op), noise);

            const bool accept = metropolis_accept(cand.objective, cur.objective, temperature, anneal);
            const TraceRecord rec{it, cand.objective, accept, temperature};
            res.trace.push_back(rec);
            if (observer) observer(rec, cand);
            if (accept)
            {
                ++res.accepted;
                res.current = std::move(cand);
                if (res.current.objective > res.best.objective) res.best = res.current;
            }
            temperature *= cfg.cooling;
        }
        return res;
    }
}

#endif // MASEC_OPTIMIZER_HPP
