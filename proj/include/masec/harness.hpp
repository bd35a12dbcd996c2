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

#ifndef MASEC_HARNESS_HPP
#define MASEC_HARNESS_HPP

#include "masec/channel.hpp"
#include "masec/geometry.hpp"
#include "masec/gradients.hpp"
#include "masec/metrics.hpp"
#include "masec/optimizer.hpp"
#include "masec/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace masec
{
    enum class ArrayKind
    {
        ULA,
        UPA,
        MA
    };

    inline std::string to_string(ArrayKind kind)
    {
        switch (kind)
        {
        case ArrayKind::ULA: return "ULA";
        case ArrayKind::UPA: return "UPA";
        case ArrayKind::MA: return "MA";
        }
        return "?";
    }

    inline ArrayKind parse_array_kind(const std::string &s)
    {
        if (s == "ULA") return ArrayKind::ULA;
        if (s == "UPA") return ArrayKind::UPA;
        if (s == "MA") return ArrayKind::MA;
        throw std::invalid_argument("unknown array kind '" + s + "' (expected ULA, UPA or MA)");
    }

    inline constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

    /// Full description of one simulation scenario. Units: meters, watts, dB,
    /// radians. move_range and d_min default to NaN, meaning "derived from
    /// lambda" (4 lambda for MA, lambda/2 spacing for the fixed arrays).
    struct ScenarioConfig
    {
        double lambda = 0.0107;
        std::size_t K = 5;
        std::size_t M = 3;
        std::size_t N = 9;
        std::size_t L = 3;
        double bob_distance_min = 25.0;
        double bob_distance_max = 35.0;
        double d = 50.0;
        double r = 2.0;
        double h = 10.0;
        double p_max = 0.01;
        double noise = 0.0005;
        double g0_db = 30.0;
        double alpha = 2.0;
        ArrayKind array_kind = ArrayKind::MA;
        std::string movable_mask; ///< '0'/'1' per antenna; empty = the four corners (MA only)
        double move_range = nan_value;
        double d_min = nan_value;
        EveSampling eve_sampling = EveSampling::uniform;
        SpacingRule spacing = SpacingRule::consecutive;

        double T0 = 1.0;
        double beta = 0.9;
        double delta_w = 0.01;
        double delta_t = 0.001;
        double tau_w = 0.005;
        double tau_t = 1e-4;
        std::size_t iter_max = 1000;
        std::size_t inner_iter_max = 1000;
        std::size_t mc_w = 10;
        std::size_t mc_t = 10;
        GainModel gain_model = GainModel::resample;
        bool greedy = false;
        std::uint64_t seed = 0;

        double element_spacing() const { return lambda / 2.0; }
        double resolved_move_range() const { return std::isnan(move_range) ? 4.0 * lambda : move_range; }
        double resolved_d_min(ArrayKind kind) const
        {
            if (!std::isnan(d_min)) return d_min;
            return kind == ArrayKind::MA ? 4.0 * lambda : element_spacing();
        }

        EveRegion eve_region() const { return {d, r, h}; }

        void validate() const
        {
            auto positive = [](double v, const char *name) {
                if (!(v > 0.0) || !std::isfinite(v))
                    throw std::invalid_argument(std::string("config: ") + name + " must be positive and finite");
            };
            auto count = [](std::size_t v, const char *name) {
                if (v == 0) throw std::invalid_argument(std::string("config: ") + name + " must be >= 1");
            };
            positive(lambda, "lambda");
            count(K, "K");
            count(M, "M");
            count(N, "N");
            count(L, "L");
            positive(bob_distance_min, "bob_distance_min");
            positive(bob_distance_max, "bob_distance_max");
            if (bob_distance_min > bob_distance_max)
                throw std::invalid_argument("config: bob_distance_min exceeds bob_distance_max");
            positive(d, "d");
            positive(r, "r");
            positive(h, "h");
            positive(p_max, "p_max");
            positive(noise, "noise");
            positive(alpha, "alpha");
            if (!std::isfinite(g0_db)) throw std::invalid_argument("config: g0_db must be finite");
            if (!std::isnan(move_range)) positive(move_range, "move_range");
            if (!std::isnan(d_min)) positive(d_min, "d_min");
            if (!(T0 >= 0.0)) throw std::invalid_argument("config: T0 must be >= 0");
            if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("config: beta must lie in (0, 1]");
            positive(delta_w, "delta_w");
            positive(delta_t, "delta_t");
            positive(tau_w, "tau_w");
            positive(tau_t, "tau_t");
            count(mc_w, "mc_w");
            count(mc_t, "mc_t");
            count(inner_iter_max, "inner_iter_max");
            if (!movable_mask.empty())
            {
                if (movable_mask.size() != N)
                    throw std::invalid_argument("config: movable_mask needs exactly N characters");
                if (movable_mask.find_first_not_of("01") != std::string::npos)
                    throw std::invalid_argument("config: movable_mask may only contain 0 and 1");
            }
            eve_region().validate();
        }
    };

    inline SaPgaConfig sa_config(const ScenarioConfig &cfg)
    {
        SaPgaConfig sa;
        sa.initial_temperature = cfg.T0;
        sa.cooling = cfg.beta;
        sa.step_w = cfg.delta_w;
        sa.step_t = cfg.delta_t;
        sa.tol_w = cfg.tau_w;
        sa.tol_t = cfg.tau_t;
        sa.outer_iterations = cfg.iter_max;
        sa.inner_iterations = cfg.inner_iter_max;
        sa.mc_w = cfg.mc_w;
        sa.mc_t = cfg.mc_t;
        sa.greedy = cfg.greedy;
        sa.gain_model = cfg.gain_model;
        return sa;
    }

    inline std::size_t grid_side(std::size_t n)
    {
        const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (side * side != n)
            throw InfeasibleGeometry("planar array needs a square antenna count, got N=" + std::to_string(n));
        return side;
    }

    /// Transmit array in the z = 0 plane.
    ///  ULA: N elements along x with lambda/2 spacing, all fixed.
    ///  UPA: sqrt(N) x sqrt(N) grid, lambda/2 spacing, all fixed; index = row * side + col.
    ///  MA:  the UPA grid where the movable antennas (default: the four corners)
    ///       get a move_range x move_range box that extends outward from their
    ///       grid point and start at the box centre.
    inline ArrayLayout make_layout(const ScenarioConfig &cfg, ArrayKind kind)
    {
        const double sp = cfg.element_spacing();
        const std::size_t N = cfg.N;
        ArrayLayout layout;
        layout.d_min = cfg.resolved_d_min(kind);
        layout.spacing = cfg.spacing;
        layout.positions.reserve(N);
        layout.regions.reserve(N);
        layout.movable.assign(N, false);

        if (kind == ArrayKind::ULA)
        {
            for (std::size_t n = 0; n < N; ++n) layout.positions.emplace_back(static_cast<double>(n) * sp, 0.0, 0.0);
            for (const auto &p : layout.positions) layout.regions.push_back(MoveRegion::point(p));
            layout.validate();
            return layout;
        }

        const std::size_t side = grid_side(N);
        for (std::size_t n = 0; n < N; ++n)
            layout.positions.emplace_back(static_cast<double>(n % side) * sp, static_cast<double>(n / side) * sp, 0.0);
        for (const auto &p : layout.positions) layout.regions.push_back(MoveRegion::point(p));
        if (kind == ArrayKind::UPA)
        {
            layout.validate();
            return layout;
        }

        if (cfg.movable_mask.empty())
        {
            if (side < 2) throw InfeasibleGeometry("movable array needs at least a 2x2 grid");
            for (std::size_t n : {std::size_t{0}, side - 1, N - side, N - 1}) layout.movable[n] = true;
        }
        else
        {
            for (std::size_t n = 0; n < N; ++n) layout.movable[n] = cfg.movable_mask[n] == '1';
        }

        const double A = cfg.resolved_move_range();
        auto axis = [&](double g, std::size_t idx) -> std::pair<double, double> {
            if (idx == 0) return {g - A, g};
            if (idx + 1 == side) return {g, g + A};
            return {g - A / 2, g + A / 2};
        };
        for (std::size_t n = 0; n < N; ++n)
        {
            if (!layout.movable[n]) continue;
            const auto [x0, x1] = axis(layout.positions[n].x(), n % side);
            const auto [y0, y1] = axis(layout.positions[n].y(), n / side);
            layout.regions[n] = {x0, x1, y0, y1, 0.0, 0.0};
            layout.positions[n] = layout.regions[n].center();
        }
        layout.validate();
        return layout;
    }

    /// Draws every propagation quantity of one scenario from `seed`. Each
    /// component uses its own sub-stream, so changing e.g. L leaves the Bob
    /// and Eve placements untouched.
    inline ChannelModel sample_channel_model(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        cfg.validate();
        ChannelModel model;
        model.lambda = cfg.lambda;
        model.eve_distance = cfg.d;
        model.g0_db = cfg.g0_db;
        model.alpha = cfg.alpha;

        Rng place = make_rng(seed, {stream::scenario, 0});
        for (std::size_t k = 0; k < cfg.K; ++k)
        {
            const double dist = uniform(place, cfg.bob_distance_min, cfg.bob_distance_max);
            const double az = uniform(place, -pi / 2, pi / 2);
            model.bob_distance.push_back(dist);
            model.bob_positions.emplace_back(dist * std::cos(az), dist * std::sin(az), 0.0);
        }
        for (std::size_t k = 0; k < cfg.K; ++k)
        {
            Rng ra = make_rng(seed, {stream::scenario, 1, k});
            Rng rg = make_rng(seed, {stream::scenario, 2, k});
            auto angles = sample_path_angles(cfg.L, ra, LinkSide::bob);
            model.bob_paths.push_back(PathSet::from_angles(std::move(angles.theta), std::move(angles.phi),
                                                           sample_path_gains(cfg.L, cfg.g0_db, model.bob_distance[k],
                                                                             cfg.alpha, rg)));
        }
        Rng ea = make_rng(seed, {stream::eves, 1});
        Rng eg = make_rng(seed, {stream::eves, 2});
        Rng ep = make_rng(seed, {stream::eves, 3});
        auto angles = sample_path_angles(cfg.L, ea, LinkSide::eve);
        model.eve_paths = PathSet::from_angles(std::move(angles.theta), std::move(angles.phi),
                                               sample_path_gains(cfg.L, cfg.g0_db, cfg.d, cfg.alpha, eg));
        model.eve_positions = sample_virtual_eves(cfg.eve_region(), cfg.M, ep, cfg.eve_sampling);
        return model;
    }

    /// Layout plus MRT beamformer, evaluated on the nominal channel.
    inline Solution initial_solution(const ChannelModel &model, ArrayLayout layout, const ScenarioConfig &cfg)
    {
        const auto ch = realize(model, layout.positions);
        Beamformer bf = init_beamformer(ch, cfg.p_max);
        return evaluate(model, std::move(layout), std::move(bf), cfg.noise);
    }

    struct Scenario
    {
        ChannelModel model;
        Solution initial;
    };

    inline Scenario build_scenario(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        ChannelModel model = sample_channel_model(cfg, seed);
        Solution init = initial_solution(model, make_layout(cfg, cfg.array_kind), cfg);
        return {std::move(model), std::move(init)};
    }

    /// Worst-user evaluation of one optimized method.
    struct MethodOutcome
    {
        double secrecy = 0.0;
        double objective = 0.0;
        double bob_capacity = 0.0;
        double eve_capacity = 0.0;
    };

    /// SA-PGA for the given array kind. Fixed arrays have no movable
    /// antennas, so only their beamformer is optimized.
    inline MethodOutcome run_method(const ChannelModel &model, const ScenarioConfig &cfg, ArrayKind kind,
                                    std::uint64_t sa_seed)
    {
        const Solution init = initial_solution(model, make_layout(cfg, kind), cfg);
        const SaResult res = sa_pga(model, init, cfg.noise, sa_config(cfg), sa_seed);
        const auto rep = secrecy_report(realize(model, res.best.layout.positions), res.best.bf, cfg.noise);
        return {rep.worst_secrecy(), rep.worst_margin(), rep.bob_capacity(), rep.eve_capacity()};
    }

    // ---------------------------------------------------------------------
    // Finite-difference audit of the analytic gradients.

    struct GradientAudit
    {
        std::size_t instances = 0;
        double max_error_w = 0.0; ///< max relative L2 error of grad_w
        double max_error_t = 0.0; ///< max relative L2 error of grad_t over instances and antennas
        double tol_w = 1e-4;
        double tol_t = 1e-3;

        bool passed() const { return max_error_w < tol_w && max_error_t < tol_t; }
    };

    inline double relative_error(const Eigen::VectorXd &analytic, const Eigen::VectorXd &reference)
    {
        return (analytic - reference).norm() / std::max(reference.norm(), std::numeric_limits<double>::min());
    }

    /// Compares grad_w and grad_t with central differences of the directly
    /// evaluated objective on random instances: random channel draw, antenna
    /// positions jittered in all three axes, random beamformer inside the power
    /// ball and a random (Bob, Eve) pair.
    inline GradientAudit audit_gradients(const ScenarioConfig &cfg, std::size_t instances, std::uint64_t seed,
                                         double fd_step_w = 1e-6, double fd_step_t = 1e-9)
    {
        GradientAudit audit;
        audit.instances = instances;
        for (std::size_t i = 0; i < instances; ++i)
        {
            const std::uint64_t s = derive_seed(seed, {stream::instance, i});
            const ChannelModel model = sample_channel_model(cfg, s);
            Rng rng = make_rng(s, {stream::pga_w});
            std::vector<Position3> pos = make_layout(cfg, ArrayKind::ULA).positions;
            for (auto &p : pos)
                for (int a = 0; a < 3; ++a) p[a] += uniform(rng, -cfg.lambda, cfg.lambda);

            const auto N = static_cast<Eigen::Index>(cfg.N), K = static_cast<Eigen::Index>(cfg.K);
            Beamformer bf{CMatrix(N, K), cfg.p_max};
            for (Eigen::Index a = 0; a < N; ++a)
                for (Eigen::Index b = 0; b < K; ++b) bf.W(a, b) = complex_normal(rng, 1.0);
            bf.W *= std::sqrt(cfg.p_max * uniform(rng, 0.2, 1.0) / bf.power());
            const auto k = static_cast<Eigen::Index>(std::uniform_int_distribution<std::size_t>(0, cfg.K - 1)(rng));
            const auto m = static_cast<Eigen::Index>(std::uniform_int_distribution<std::size_t>(0, cfg.M - 1)(rng));

            const auto ch = realize(model, pos);
            const CVector gw = grad_w(ch, bf, k, m, cfg.noise);
            Eigen::VectorXd x0(2 * N), analytic_w(2 * N);
            x0 << bf.W.col(k).real(), bf.W.col(k).imag();
            analytic_w << gw.real(), gw.imag();
            const auto fw = [&](const Eigen::VectorXd &x) {
                Beamformer b = bf;
                b.W.col(k).real() = x.head(N);
                b.W.col(k).imag() = x.tail(N);
                return objective_value(ch, b, cfg.noise, k, m);
            };
            audit.max_error_w = std::max(audit.max_error_w, relative_error(analytic_w, fd_gradient(fw, x0, fd_step_w)));

            for (std::size_t n = 0; n < pos.size(); ++n)
            {
                const Eigen::Vector3d gt =
                    grad_t(model, pos, bf, n, static_cast<std::size_t>(k), static_cast<std::size_t>(m), cfg.noise);
                const auto ft = [&](const Eigen::VectorXd &t) {
                    std::vector<Position3> moved = pos;
                    moved[n] = t;
                    return objective_value(realize(model, moved), bf, cfg.noise, k, m);
                };
                const Eigen::VectorXd fd = fd_gradient(ft, Eigen::VectorXd(pos[n]), fd_step_t);
                audit.max_error_t = std::max(audit.max_error_t, relative_error(gt, fd));
            }
        }
        return audit;
    }

    // ---------------------------------------------------------------------
    // One-dimensional search on a ULA with a frozen beamformer.

    struct OneDimRow
    {
        std::string mode; ///< "move_all" or "move_parts"
        std::size_t antennas_moved = 0;
        double secrecy = 0.0;
        double objective = 0.0;
        double baseline_secrecy = 0.0;
        double improvement_pct = 0.0; ///< 0 when the baseline secrecy is 0
    };

    struct OneDimResult
    {
        double baseline_secrecy = 0.0;
        double baseline_objective = 0.0;
        std::vector<OneDimRow> move_all;
        std::vector<OneDimRow> move_parts;
    };

    /// ULA of cfg.N elements whose antennas may each slide along y over
    /// [0, move_range] in steps of lambda/2. The beamformer is the MRT of
    /// the unmoved array and stays fixed.
    ///  move_all(c):   antennas 1..c are visited in index order; each takes the
    ///                 grid offset maximising the worst margin (staying put on ties).
    ///  move_parts(c): best move_all-style search over any subset of antennas 1..c.
    inline OneDimResult one_dim_search(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        if (cfg.N > 20) throw std::invalid_argument("one_dim_search: N must be at most 20");
        const ChannelModel model = sample_channel_model(cfg, seed);
        const double sp = cfg.element_spacing();
        const double range = cfg.resolved_move_range();
        const auto steps = static_cast<std::size_t>(std::floor(range / sp + 1e-9));

        ArrayLayout layout = make_layout(cfg, ArrayKind::ULA);
        layout.d_min = sp;
        for (std::size_t n = 0; n < layout.size(); ++n)
        {
            layout.movable[n] = true;
            const Position3 &p = layout.positions[n];
            layout.regions[n] = {p.x(), p.x(), 0.0, range, 0.0, 0.0};
        }
        const Beamformer bf = init_beamformer(realize(model, layout.positions), cfg.p_max);
        auto score = [&](const ArrayLayout &l) {
            return secrecy_report(realize(model, l.positions), bf, cfg.noise).worst_margin();
        };

        const double base = score(layout);
        auto greedy = [&](unsigned subset) {
            ArrayLayout l = layout;
            double best = base;
            for (std::size_t n = 0; n < l.size(); ++n)
            {
                if (!(subset & (1u << n))) continue;
                const Position3 keep = l.positions[n];
                Position3 best_p = keep;
                for (std::size_t s = 0; s <= steps; ++s)
                {
                    const Position3 p(keep.x(), static_cast<double>(s) * sp, keep.z());
                    if (!l.spacing_ok(n, p)) continue;
                    l.positions[n] = p;
                    const double v = score(l);
                    if (v > best)
                    {
                        best = v;
                        best_p = p;
                    }
                }
                l.positions[n] = best_p;
            }
            return best;
        };

        const auto N = static_cast<unsigned>(cfg.N);
        std::vector<double> by_subset(std::size_t{1} << N);
        for (unsigned s = 0; s < by_subset.size(); ++s) by_subset[s] = s == 0 ? base : greedy(s);

        OneDimResult out;
        out.baseline_objective = base;
        out.baseline_secrecy = std::max(base, 0.0);
        auto row = [&](const char *mode, std::size_t c, double obj) {
            const double sec = std::max(obj, 0.0);
            const double pct = out.baseline_secrecy > 0.0 ? 100.0 * (sec - out.baseline_secrecy) / out.baseline_secrecy
                                                          : 0.0;
            return OneDimRow{mode, c, sec, obj, out.baseline_secrecy, pct};
        };
        for (unsigned c = 1; c <= N; ++c)
        {
            const unsigned prefix = (1u << c) - 1;
            double parts = base;
            for (unsigned s = 0; s <= prefix; ++s)
                if ((s & ~prefix) == 0) parts = std::max(parts, by_subset[s]);
            out.move_all.push_back(row("move_all", c, by_subset[prefix]));
            out.move_parts.push_back(row("move_parts", c, parts));
        }
        return out;
    }

    // ---------------------------------------------------------------------
    // Monte-Carlo sweeps.

    enum class SweepVar
    {
        paths,
        alpha,
        noise,
        distance ///< Eve region distance d
    };

    inline std::string to_string(SweepVar v)
    {
        switch (v)
        {
        case SweepVar::paths: return "paths";
        case SweepVar::alpha: return "alpha";
        case SweepVar::noise: return "noise";
        case SweepVar::distance: return "distance";
        }
        return "?";
    }

    inline SweepVar parse_sweep_var(const std::string &s)
    {
        if (s == "paths") return SweepVar::paths;
        if (s == "alpha") return SweepVar::alpha;
        if (s == "noise") return SweepVar::noise;
        if (s == "distance") return SweepVar::distance;
        throw std::invalid_argument("unknown sweep variable '" + s + "' (expected paths, alpha, noise or distance)");
    }

    inline ScenarioConfig with_sweep_value(ScenarioConfig cfg, SweepVar var, double value)
    {
        switch (var)
        {
        case SweepVar::paths:
        {
            const double rounded = std::round(value);
            if (rounded < 1.0 || std::abs(rounded - value) > 1e-9)
                throw std::invalid_argument("paths sweep needs positive integer grid values");
            cfg.L = static_cast<std::size_t>(rounded);
            break;
        }
        case SweepVar::alpha: cfg.alpha = value; break;
        case SweepVar::noise: cfg.noise = value; break;
        case SweepVar::distance: cfg.d = value; break;
        }
        return cfg;
    }

    struct SweepResult
    {
        std::string sweep_var;
        double sweep_value = 0.0;
        std::string method;
        std::size_t rep_count = 0;
        double mean_secrecy = 0.0;
        double mean_bob_capacity = 0.0;
        double mean_eve_capacity = 0.0;
        std::uint64_t seed_base = 0;

        bool operator==(const SweepResult &) const = default;
    };

    inline constexpr std::array<ArrayKind, 3> sweep_methods{ArrayKind::MA, ArrayKind::ULA, ArrayKind::UPA};

    /// Seed of replication `rep`. It does not depend on the grid point or the
    /// method, so all methods (and all grid points) see common random numbers.
    inline std::uint64_t rep_seed(std::uint64_t seed_base, std::size_t rep)
    {
        return derive_seed(seed_base, {stream::instance, rep});
    }

    /// For every grid value and replication, draws one channel model and
    /// optimizes each method on it (default MA, ULA, UPA). Rows come out
    /// grid-major in method order; sums are accumulated in replication order.
    inline std::vector<SweepResult> run_sweep(SweepVar var, const std::vector<double> &grid, std::size_t reps,
                                              const ScenarioConfig &cfg, std::uint64_t seed_base,
                                              std::span<const ArrayKind> methods = sweep_methods)
    {
        if (grid.empty()) throw std::invalid_argument("run_sweep: empty grid");
        if (reps == 0) throw std::invalid_argument("run_sweep: reps must be >= 1");
        if (methods.empty()) throw std::invalid_argument("run_sweep: no methods");
        std::vector<SweepResult> out;
        for (const double value : grid)
        {
            const ScenarioConfig point = with_sweep_value(cfg, var, value);
            std::vector<MethodOutcome> sum(methods.size());
            for (std::size_t rep = 0; rep < reps; ++rep)
            {
                const std::uint64_t s = rep_seed(seed_base, rep);
                const ChannelModel model = sample_channel_model(point, s);
                for (std::size_t i = 0; i < methods.size(); ++i)
                {
                    const MethodOutcome o = run_method(model, point, methods[i], derive_seed(s, {stream::anneal}));
                    sum[i].secrecy += o.secrecy;
                    sum[i].bob_capacity += o.bob_capacity;
                    sum[i].eve_capacity += o.eve_capacity;
                }
            }
            const auto n = static_cast<double>(reps);
            for (std::size_t i = 0; i < methods.size(); ++i)
                out.push_back({to_string(var), value, to_string(methods[i]), reps, sum[i].secrecy / n,
                               sum[i].bob_capacity / n, sum[i].eve_capacity / n, seed_base});
        }
        return out;
    }

    // ---------------------------------------------------------------------
    // CSV serialization. Doubles are written with 17 significant digits, so
    // parsing them back is exact.

    inline std::string format_double(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    inline constexpr const char *sweep_csv_header =
        "sweep_var,sweep_value,method,rep_count,mean_secrecy,mean_bob_capacity,mean_eve_capacity,seed_base";
    inline constexpr const char *trace_csv_header = "iter,objective,accepted,temperature";
    inline constexpr const char *onedsearch_csv_header =
        "mode,antennas_moved,secrecy,objective,baseline_secrecy,improvement_pct";

    inline void write_results(std::ostream &os, const std::vector<SweepResult> &results)
    {
        os << sweep_csv_header << '\n';
        for (const auto &r : results)
            os << r.sweep_var << ',' << format_double(r.sweep_value) << ',' << r.method << ',' << r.rep_count << ','
               << format_double(r.mean_secrecy) << ',' << format_double(r.mean_bob_capacity) << ','
               << format_double(r.mean_eve_capacity) << ',' << r.seed_base << '\n';
    }

    inline std::ofstream open_output(const std::string &path)
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
        return os;
    }

    inline void write_results(const std::string &path, const std::vector<SweepResult> &results)
    {
        auto os = open_output(path);
        write_results(os, results);
        if (!os.flush()) throw std::runtime_error("write to '" + path + "' failed");
    }

    inline std::vector<std::string> split_csv_line(const std::string &line)
    {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    }

    inline std::vector<SweepResult> read_results(std::istream &is)
    {
        std::string line;
        if (!std::getline(is, line) || line != sweep_csv_header)
            throw std::runtime_error("sweep csv: missing or unexpected header");
        std::vector<SweepResult> out;
        while (std::getline(is, line))
        {
            if (line.empty()) continue;
            const auto c = split_csv_line(line);
            if (c.size() != 8) throw std::runtime_error("sweep csv: expected 8 fields in '" + line + "'");
            out.push_back({c[0], std::stod(c[1]), c[2], std::stoull(c[3]), std::stod(c[4]), std::stod(c[5]),
                           std::stod(c[6]), std::stoull(c[7])});
        }
        return out;
    }

    inline std::vector<SweepResult> read_results(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
        return read_results(is);
    }

    inline void write_trace(std::ostream &os, const std::vector<TraceRecord> &trace)
    {
        os << trace_csv_header << '\n';
        for (const auto &t : trace)
            os << t.iter << ',' << format_double(t.objective) << ',' << (t.accepted ? 1 : 0) << ','
               << format_double(t.temperature) << '\n';
    }

    inline std::vector<TraceRecord> read_trace(std::istream &is)
    {
        std::string line;
        if (!std::getline(is, line) || line != trace_csv_header)
            throw std::runtime_error("trace csv: missing or unexpected header");
        std::vector<TraceRecord> out;
        while (std::getline(is, line))
        {
            if (line.empty()) continue;
            const auto c = split_csv_line(line);
            if (c.size() != 4) throw std::runtime_error("trace csv: expected 4 fields in '" + line + "'");
            out.push_back({std::stoull(c[0]), std::stod(c[1]), c[2] == "1", std::stod(c[3])});
        }
        return out;
    }

    inline void write_onedsearch(std::ostream &os, const OneDimResult &res)
    {
        os << onedsearch_csv_header << '\n';
        for (const auto *rows : {&res.move_all, &res.move_parts})
            for (const auto &r : *rows)
                os << r.mode << ',' << r.antennas_moved << ',' << format_double(r.secrecy) << ','
                   << format_double(r.objective) << ',' << format_double(r.baseline_secrecy) << ','
                   << format_double(r.improvement_pct) << '\n';
    }

    /// Objective of the current (accepted) state after every trace row.
    inline std::vector<double> accepted_objectives(const std::vector<TraceRecord> &trace)
    {
        std::vector<double> out;
        out.reserve(trace.size());
        double cur = trace.empty() ? 0.0 : trace.front().objective;
        for (const auto &t : trace)
        {
            if (t.accepted) cur = t.objective;
            out.push_back(cur);
        }
        return out;
    }
}

#endif // MASEC_HARNESS_HPP
