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

#include "masec/harness.hpp"
#include "masec/optimizer.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace masec;

namespace
{
    constexpr double noise = 0.0005;

    Scenario default_scenario(std::uint64_t seed, ScenarioConfig cfg = {})
    {
        return build_scenario(cfg, seed);
    }

    SaPgaConfig short_config(std::size_t outer)
    {
        SaPgaConfig c = sa_config(ScenarioConfig{});
        c.outer_iterations = outer;
        return c;
    }
}

TEST(AdaGradTest, EffectiveStepFormula)
{
    AdaGrad ada(3, 0.01, 1e-8);
    const Eigen::Vector3d g1(1.0, -2.0, 0.0), g2(0.5, 0.5, 3.0);
    const Eigen::VectorXd s1 = ada.step(g1);
    EXPECT_NEAR(s1[0], 0.01 * 1.0 / std::sqrt(1.0 + 1e-8), 1e-15);
    EXPECT_NEAR(s1[1], 0.01 * -2.0 / std::sqrt(4.0 + 1e-8), 1e-15);
    EXPECT_EQ(s1[2], 0.0);
    const Eigen::VectorXd s2 = ada.step(g2);
    EXPECT_NEAR(s2[0], 0.01 * 0.5 / std::sqrt(1.25 + 1e-8), 1e-15);
    EXPECT_NEAR(s2[2], 0.01 * 3.0 / std::sqrt(9.0 + 1e-8), 1e-15);
}

TEST(AdaGradTest, EffectiveStepNonincreasing)
{
    Rng rng(1);
    AdaGrad ada(5, 0.1, 1e-8);
    Eigen::VectorXd prev_step = ada.effective_step(), prev_acc = ada.accumulator();
    for (int i = 0; i < 200; ++i)
    {
        Eigen::VectorXd g(5);
        for (int j = 0; j < 5; ++j) g[j] = uniform(rng, -3, 3);
        ada.step(g);
        for (int j = 0; j < 5; ++j)
        {
            EXPECT_LE(ada.effective_step()[j], prev_step[j]);
            EXPECT_GE(ada.accumulator()[j], prev_acc[j]);
            EXPECT_GE(ada.accumulator()[j], 0.0);
        }
        prev_step = ada.effective_step();
        prev_acc = ada.accumulator();
    }
}

TEST(Metropolis, ImprovementsAlwaysAccepted)
{
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) EXPECT_TRUE(metropolis_accept(1.0 + 1e-9, 1.0, uniform(rng, 0, 5), rng));
    EXPECT_TRUE(metropolis_accept(0.5, 0.4, 0.0, rng));
}

TEST(Metropolis, ColdLimitRejects)
{
    Rng rng(3);
    for (int i = 0; i < 1000; ++i)
    {
        EXPECT_FALSE(metropolis_accept(0.99, 1.0, 1e-6, rng));
        EXPECT_FALSE(metropolis_accept(0.99, 1.0, 0.0, rng));
    }
}

TEST(Metropolis, HalfAcceptanceAtLn2)
{
    Rng rng(4);
    const double t = 0.37;
    int accepted = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) accepted += metropolis_accept(1.0 - t * std::log(2.0), 1.0, t, rng);
    EXPECT_NEAR(static_cast<double>(accepted) / n, 0.5, 0.015);
}

TEST(InitBeamformer, FullPowerMrt)
{
    Rng rng(5);
    for (int i = 0; i < 100; ++i)
    {
        const ChannelRealization ch{test::random_cmatrix(9, 5, rng), test::random_cmatrix(9, 3, rng)};
        const Beamformer bf = init_beamformer(ch, 0.01);
        EXPECT_NEAR(bf.power(), 0.01, 1e-15);
        for (Eigen::Index k = 0; k < 5; ++k)
        {
            const double own = std::norm(ch.h_bob.col(k).dot(bf.W.col(k)));
            EXPECT_NEAR(own, 0.01 / 5 * ch.h_bob.col(k).squaredNorm(), 1e-12 * own);
        }
    }
    const ChannelRealization one{test::random_cmatrix(4, 1, rng), test::random_cmatrix(4, 1, rng)};
    const Beamformer single = init_beamformer(one, 2.0);
    EXPECT_NEAR(single.power(), 2.0, 1e-14);
    const ChannelRealization zero{CMatrix::Zero(4, 2), CMatrix::Zero(4, 1)};
    EXPECT_NEAR(init_beamformer(zero, 1.0).power(), 1.0, 1e-14);
}

TEST(PgaW, ZeroGradientLeavesBeamformer)
{
    // Eve sees exactly the Bob channel, so the two log terms cancel.
    ChannelModel model;
    Rng rng(6);
    const PathSet ps = test::random_paths(3, rng);
    model.bob_paths = {ps};
    model.bob_distance = {30.0};
    model.eve_paths = ps;
    model.eve_positions = {Position3::Zero()};
    const auto pos = test::random_positions(4, rng, 0.02);
    const FocusedLink link(model, pos, 0, 0);
    const GainSampler frozen(link, GainModel::frozen);
    const Beamformer bf = test::random_beamformer(4, 1, 0.01, rng);
    PgaStats stats;
    const Beamformer out = pga_w(link, frozen, bf, noise, short_config(1), rng, &stats);
    EXPECT_EQ(out.W, bf.W);
    EXPECT_EQ(stats.iterations, 1u);
}

TEST(PgaW, ProjectionHitsPowerBudget)
{
    const Scenario sc = default_scenario(7);
    const FocusedLink link(sc.model, sc.initial.layout.positions, sc.initial.worst_k, sc.initial.best_m);
    const GainSampler sampler(link, GainModel::resample);
    SaPgaConfig cfg = short_config(1);
    cfg.step_w = 0.5;
    Rng rng(7);
    PgaStats stats;
    const Beamformer out = pga_w(link, sampler, sc.initial.bf, noise, cfg, rng, &stats);
    EXPECT_GT(stats.projections, 0u);
    EXPECT_LE(stats.max_projection_residual, 1e-9);
    EXPECT_TRUE(out.feasible());
    // Only the selected column moves.
    for (Eigen::Index j = 0; j < out.W.cols(); ++j)
    {
        if (j != static_cast<Eigen::Index>(sc.initial.worst_k)) { EXPECT_EQ(out.W.col(j), sc.initial.bf.W.col(j)); }
    }
}

// With frozen gains and a small step, consecutive PGA iterates rarely lose
// objective (the sampler is deterministic, so capping the iteration count
// reproduces the intermediate iterates exactly).
TEST(PgaW, AscentWithFrozenGains)
{
    int steps = 0, ascents = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const Scenario sc = default_scenario(seed);
        const FocusedLink link(sc.model, sc.initial.layout.positions, sc.initial.worst_k, sc.initial.best_m);
        const GainSampler frozen(link, GainModel::frozen);
        const auto ch = realize(sc.model, sc.initial.layout.positions);
        const auto k = static_cast<Eigen::Index>(sc.initial.worst_k), m = static_cast<Eigen::Index>(sc.initial.best_m);
        SaPgaConfig cfg = short_config(1);
        cfg.step_w = 1e-4;
        cfg.tol_w = 0.0;
        double prev = objective_value(ch, sc.initial.bf, noise, k, m);
        for (std::size_t v = 1; v <= 40; ++v)
        {
            cfg.inner_iterations = v;
            Rng rng(0);
            const Beamformer bf = pga_w(link, frozen, sc.initial.bf, noise, cfg, rng);
            const double cur = objective_value(ch, bf, noise, k, m);
            ++steps;
            if (cur >= prev - 1e-12) ++ascents;
            prev = cur;
        }
    }
    EXPECT_GE(ascents, static_cast<int>(0.95 * steps));
}

TEST(PgaT, FixedArrayUnchanged)
{
    ScenarioConfig cfg;
    cfg.array_kind = ArrayKind::UPA;
    const Scenario sc = default_scenario(8, cfg);
    FocusedLink link(sc.model, sc.initial.layout.positions, sc.initial.worst_k, sc.initial.best_m);
    const GainSampler sampler(link, GainModel::resample);
    Rng rng(8);
    const ArrayLayout out = pga_t(link, sampler, sc.initial.layout, sc.initial.bf, noise, short_config(1), rng);
    EXPECT_EQ(out.positions, sc.initial.layout.positions);
}

TEST(PgaT, MovesStayFeasible)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const Scenario sc = default_scenario(seed);
        FocusedLink link(sc.model, sc.initial.layout.positions, sc.initial.worst_k, sc.initial.best_m);
        const GainSampler sampler(link, GainModel::resample);
        SaPgaConfig cfg = short_config(1);
        cfg.step_t = 0.02; // large steps provoke both projections
        Rng rng(seed);
        PgaStats stats;
        const ArrayLayout out = pga_t(link, sampler, sc.initial.layout, sc.initial.bf, noise, cfg, rng, &stats);
        EXPECT_TRUE(out.is_feasible());
        for (std::size_t n = 0; n < out.size(); ++n)
        {
            if (!out.movable[n]) { EXPECT_EQ(out.positions[n], sc.initial.layout.positions[n]); }
            EXPECT_EQ(link.position(n), out.positions[n]);
        }
    }
}

TEST(SaPga, GreedyFrozenIsMonotone)
{
    const Scenario sc = default_scenario(9);
    SaPgaConfig cfg = short_config(60);
    cfg.greedy = true;
    cfg.gain_model = GainModel::frozen;
    const SaResult res = sa_pga(sc.model, sc.initial, noise, cfg, 9);
    const auto acc = accepted_objectives(res.trace);
    for (std::size_t i = 1; i < acc.size(); ++i) EXPECT_GE(acc[i], acc[i - 1]);
    for (const auto &t : res.trace) EXPECT_EQ(t.temperature, 0.0);
}

TEST(SaPga, HotRunKeepsBestSoFar)
{
    const Scenario sc = default_scenario(10);
    SaPgaConfig cfg = short_config(80);
    cfg.initial_temperature = 1e6;
    cfg.cooling = 1.0;
    const SaResult res = sa_pga(sc.model, sc.initial, noise, cfg, 10);
    double best = res.trace.front().objective;
    bool decreased = false;
    const auto acc = accepted_objectives(res.trace);
    for (std::size_t i = 1; i < res.trace.size(); ++i)
    {
        if (res.trace[i].accepted) best = std::max(best, res.trace[i].objective);
        decreased = decreased || acc[i] < acc[i - 1];
    }
    EXPECT_TRUE(decreased);
    EXPECT_DOUBLE_EQ(res.best.objective, best);
    EXPECT_GE(res.best.objective, sc.initial.objective);
}

TEST(SaPga, TemperatureSchedule)
{
    const Scenario sc = default_scenario(11);
    const SaResult res = sa_pga(sc.model, sc.initial, noise, short_config(30), 11);
    ASSERT_EQ(res.trace.size(), 31u);
    EXPECT_EQ(res.trace[0].temperature, 1.0);
    for (std::size_t i = 2; i < res.trace.size(); ++i)
    {
        EXPECT_LE(res.trace[i].temperature, res.trace[i - 1].temperature);
        EXPECT_NEAR(res.trace[i].temperature, std::pow(0.9, static_cast<double>(i - 1)), 1e-12);
    }
}

TEST(SaPga, DeterministicForSeed)
{
    const Scenario sc = default_scenario(12);
    const SaResult a = sa_pga(sc.model, sc.initial, noise, short_config(40), 5);
    const SaResult b = sa_pga(sc.model, sc.initial, noise, short_config(40), 5);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i)
    {
        EXPECT_EQ(a.trace[i].objective, b.trace[i].objective);
        EXPECT_EQ(a.trace[i].accepted, b.trace[i].accepted);
    }
    EXPECT_EQ(a.best.bf.W, b.best.bf.W);
    EXPECT_EQ(a.best.layout.positions, b.best.layout.positions);
}

// Every candidate is feasible; after a rejection the next candidate is built
// from the unchanged state, and the state after the run equals the last
// accepted candidate.
TEST(SaPga, FeasibleCandidatesAndRejectionKeepsState)
{
    const Scenario sc = default_scenario(13);
    Solution last = sc.initial;
    std::size_t rejected = 0;
    const SaResult res = sa_pga(sc.model, sc.initial, noise, short_config(100), 13,
                                [&](const TraceRecord &rec, const Solution &cand) {
                                    EXPECT_TRUE(cand.layout.is_feasible());
                                    EXPECT_TRUE(cand.bf.feasible());
                                    if (rec.accepted) last = cand;
                                    else ++rejected;
                                });
    EXPECT_GT(rejected, 0u);
    EXPECT_EQ(res.current.bf.W, last.bf.W);
    EXPECT_EQ(res.current.layout.positions, last.layout.positions);
    EXPECT_EQ(res.current.objective, last.objective);
}

TEST(Evaluate, ClipsSecrecy)
{
    const Scenario sc = default_scenario(14);
    Beamformer silent = sc.initial.bf;
    silent.W.setZero();
    const Solution s = evaluate(sc.model, sc.initial.layout, silent, noise);
    EXPECT_EQ(s.objective, 0.0);
    EXPECT_EQ(s.secrecy, 0.0);
    EXPECT_EQ(sc.initial.secrecy, std::max(sc.initial.objective, 0.0));
}
