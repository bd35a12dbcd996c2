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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "masec/harness.hpp"
#include "masec/metrics.hpp"
#include "masec/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace masec;
namespace fs = std::filesystem;

namespace
{
    // Outer SA iterations per method run inside the Monte-Carlo sweeps. The
    // full 1000 iterations at 200 replications would take hours on one core.
    constexpr std::size_t sweep_iterations = 100;
    constexpr std::size_t sweep_reps = 200;
    constexpr std::uint64_t sweep_seed = 2024;

    int failures = 0;

    void report(int id, bool ok, const std::string &detail)
    {
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }

    class Stopwatch
    {
    public:
        double seconds() const
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        }

    private:
        std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    double stddev(std::vector<double>::const_iterator b, std::vector<double>::const_iterator e)
    {
        const auto n = static_cast<double>(e - b);
        double mean = 0.0;
        for (auto it = b; it != e; ++it) mean += *it;
        mean /= n;
        double ss = 0.0;
        for (auto it = b; it != e; ++it) ss += (*it - mean) * (*it - mean);
        return std::sqrt(ss / n);
    }

    // Field-response sum sum_l sigma_l exp(j 2pi/lambda d.p_l), phases in long double.
    cplx field_sum(const long double d[3], const PathSet &ps, double lambda)
    {
        const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
        cplx h = 0.0;
        for (std::size_t l = 0; l < ps.size(); ++l)
        {
            const auto &p = ps.direction[l];
            const long double ph = two_pi / lambda * (d[0] * p.x() + d[1] * p.y() + d[2] * p.z());
            h += ps.gain[static_cast<Eigen::Index>(l)] *
                 cplx(static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph)));
        }
        return h;
    }

    void criterion_gradients()
    {
        const Stopwatch sw;
        const GradientAudit a = audit_gradients(ScenarioConfig{}, 100, 1);
        const double t = sw.seconds();
        report(1, a.passed() && t < 60.0,
               fmt("gradient audit over %zu instances: grad_w max rel err %.3g (< %.0e), grad_t max rel err %.3g "
                   "(< %.0e), %.2f s (target < 60 s)",
                   a.instances, a.max_error_w, a.tol_w, a.max_error_t, a.tol_t, t));
    }

    void criterion_dual_form()
    {
        const Stopwatch sw;
        const ScenarioConfig cfg;
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 1000; ++i)
        {
            const ChannelModel model = sample_channel_model(cfg, i);
            ArrayLayout layout = make_layout(cfg, ArrayKind::MA);
            Rng rng = make_rng(i, {stream::pga_t});
            for (std::size_t n = 0; n < layout.size(); ++n)
            {
                if (!layout.movable[n]) continue;
                const MoveRegion &r = layout.regions[n];
                layout.positions[n] = {uniform(rng, r.x_min, r.x_max), uniform(rng, r.y_min, r.y_max), 0.0};
            }
            const ChannelRealization ch = realize(model, layout.positions);
            for (std::size_t n = 0; n < layout.size(); ++n)
            {
                const Position3 &t = layout.positions[n];
                const auto row = static_cast<Eigen::Index>(n);
                const long double d[3] = {t.x(), t.y(), t.z()};
                for (std::size_t k = 0; k < model.bobs(); ++k)
                    worst = std::max(worst, std::abs(ch.h_bob(row, static_cast<Eigen::Index>(k)) -
                                                     field_sum(d, model.bob_paths[k], cfg.lambda)));
                for (std::size_t m = 0; m < model.eves(); ++m)
                {
                    const Position3 &r = model.eve_positions[m];
                    const long double de[3] = {static_cast<long double>(t.x()) - r.x(),
                                               static_cast<long double>(t.y()) - r.y(),
                                               static_cast<long double>(t.z()) - r.z()};
                    worst = std::max(worst, std::abs(ch.h_eve(row, static_cast<Eigen::Index>(m)) -
                                                     field_sum(de, model.eve_paths, cfg.lambda)));
                }
            }
        }
        const double t = sw.seconds();
        report(2, worst <= 1e-12 && t < 5.0,
               fmt("matrix vs summed channel forms on 1000 instances: max abs diff %.3g (<= 1e-12), %.2f s "
                   "(target < 5 s)",
                   worst, t));
    }

    void criterion_feasibility()
    {
        const ScenarioConfig cfg;
        const Scenario sc = build_scenario(cfg, 0);
        std::size_t accepted = 0, infeasible = 0;
        const SaResult res = sa_pga(sc.model, sc.initial, cfg.noise, sa_config(cfg), 0,
                                    [&](const TraceRecord &rec, const Solution &cand) {
                                        if (!rec.accepted) return;
                                        ++accepted;
                                        const bool power_ok = cand.bf.power() <= cfg.p_max * (1.0 + 1e-12);
                                        if (!cand.layout.is_feasible() || !power_ok) ++infeasible;
                                    });
        const double residual = res.w_stats.max_projection_residual;
        const bool ok = infeasible == 0 && res.trace.size() == cfg.iter_max + 1 && residual <= 1e-9 &&
                        res.best.layout.is_feasible();
        report(3, ok,
               fmt("%zu-iteration run: %zu accepted iterates, %zu infeasible; %zu power projections, max |P - "
                   "P_max| after projection %.3g (<= 1e-9)",
                   cfg.iter_max, accepted, infeasible, res.w_stats.projections, residual));
    }

    void criterion_convergence()
    {
        const ScenarioConfig cfg;
        const Scenario sc = build_scenario(cfg, 0);
        const SaResult res = sa_pga(sc.model, sc.initial, cfg.noise, sa_config(cfg), 0);
        bool monotone = true;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto &rec : res.trace)
        {
            const double next = rec.accepted ? std::max(best, rec.objective) : best;
            if (next < best) monotone = false;
            best = next;
        }
        monotone = monotone && best == res.best.objective;
        const std::vector<double> acc = accepted_objectives(res.trace);
        const auto fifth = static_cast<std::ptrdiff_t>(acc.size() / 5);
        const double first = stddev(acc.begin(), acc.begin() + fifth);
        const double last = stddev(acc.end() - fifth, acc.end());
        report(4, monotone && last < 0.1 * first,
               fmt("best-so-far nondecreasing: %s; std of accepted objective first 20%% %.4g, last 20%% %.4g "
                   "(ratio %.3g < 0.1)",
                   monotone ? "yes" : "no", first, last, first > 0 ? last / first : INFINITY));
    }

    struct MethodMeans
    {
        double value, ma, ula, upa;
    };

    std::vector<MethodMeans> collect(const std::vector<SweepResult> &rows)
    {
        std::vector<MethodMeans> out;
        for (std::size_t i = 0; i + 2 < rows.size(); i += 3)
            out.push_back({rows[i].sweep_value, rows[i].mean_secrecy, rows[i + 1].mean_secrecy,
                           rows[i + 2].mean_secrecy});
        return out;
    }

    void criterion_sweeps()
    {
        const Stopwatch sw;
        ScenarioConfig cfg;
        cfg.iter_max = sweep_iterations;
        const auto paths = collect(run_sweep(SweepVar::paths, {1, 2, 3, 4}, sweep_reps, cfg, sweep_seed));
        const auto noise = collect(run_sweep(SweepVar::noise, {1e-4, 5e-4, 1e-3, 5e-3}, sweep_reps, cfg, sweep_seed));
        bool dominate = true;
        std::string detail;
        for (const auto *sweep : {&paths, &noise})
            for (const auto &p : *sweep)
            {
                if (!(p.ma >= p.ula && p.ma >= p.upa)) dominate = false;
                detail += fmt(" %s=%g MA %.4f ULA %.4f UPA %.4f;", sweep == &paths ? "L" : "noise", p.value, p.ma,
                              p.ula, p.upa);
            }
        const MethodMeans &def = paths[2];
        const double fpa = std::max(def.ula, def.upa);
        const double gain = fpa > 0.0 ? (def.ma - fpa) / fpa : INFINITY;
        report(5, dominate && gain >= 0.05,
               fmt("%zu reps, %zu SA iterations per run: MA >= ULA, UPA at every point: %s; default-point gain over "
                   "best fixed array %.1f%% (>= 5%%); %.0f s",
                   sweep_reps, sweep_iterations, dominate ? "yes" : "no", 100.0 * gain, sw.seconds()));
        std::printf("    %s\n", detail.c_str());
    }

    void criterion_alpha_peak()
    {
        const Stopwatch sw;
        ScenarioConfig cfg;
        cfg.iter_max = sweep_iterations;
        std::vector<double> grid;
        for (int i = 0; i <= 15; ++i) grid.push_back(2.0 + 0.1 * i);
        const std::array<ArrayKind, 1> ma{ArrayKind::MA};
        const auto rows = run_sweep(SweepVar::alpha, grid, sweep_reps, cfg, sweep_seed, ma);
        std::size_t arg = 0;
        std::string detail;
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (rows[i].mean_secrecy > rows[arg].mean_secrecy) arg = i;
            detail += fmt(" %.1f:%.4f", rows[i].sweep_value, rows[i].mean_secrecy);
        }
        const bool interior = arg > 0 && arg + 1 < rows.size();
        report(6, interior,
               fmt("MA mean secrecy over alpha 2.0..3.5 peaks at alpha = %.1f (%.4f), strictly inside: %s; %.0f s",
                   rows[arg].sweep_value, rows[arg].mean_secrecy, interior ? "yes" : "no", sw.seconds()));
        std::printf("    %s\n", detail.c_str());
    }

    void criterion_one_dim()
    {
        ScenarioConfig cfg;
        cfg.array_kind = ArrayKind::ULA;
        cfg.N = 6;
        std::size_t violations = 0;
        double parts = 0.0, all = 0.0, base = 0.0;
        for (std::uint64_t seed = 0; seed < 50; ++seed)
        {
            const OneDimResult r = one_dim_search(cfg, seed);
            for (std::size_t c = 0; c < r.move_all.size(); ++c)
                if (!(r.move_parts[c].secrecy >= r.move_all[c].secrecy &&
                      r.move_all[c].secrecy >= r.baseline_secrecy))
                    ++violations;
            parts += r.move_parts.back().secrecy;
            all += r.move_all.back().secrecy;
            base += r.baseline_secrecy;
        }
        report(7, violations == 0,
               fmt("50 seeds x 6 antenna counts: %zu dominance violations; mean secrecy move_parts %.4f, move_all "
                   "%.4f, fixed ULA %.4f",
                   violations, parts / 50, all / 50, base / 50));
    }

    void criterion_metropolis()
    {
        const double temperature = 0.37;
        Rng rng = make_rng(8, {stream::anneal});
        std::size_t hits = 0;
        const std::size_t draws = 100000;
        for (std::size_t i = 0; i < draws; ++i)
            if (metropolis_accept(1.0 - temperature * std::numbers::ln2, 1.0, temperature, rng)) ++hits;
        const double rate = static_cast<double>(hits) / static_cast<double>(draws);
        report(8, std::abs(rate - 0.5) <= 0.01,
               fmt("acceptance rate at dR = -T ln2 over 1e5 draws: %.4f (0.5 +- 0.01)", rate));
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    void criterion_determinism()
    {
        const fs::path root = fs::temp_directory_path() / "masec_acceptance_determinism";
        fs::remove_all(root);
        const std::string bin = MASEC_CLI_PATH;
        bool ran = true;
        for (const char *run : {"a", "b"})
        {
            const fs::path dir = root / run;
            const std::string opt = "\"" + bin + "\" --seed 5 --out \"" + (dir / "optimize").string() +
                                    "\" optimize > /dev/null";
            const std::string sweep = "\"" + bin + "\" --seed 5 --out \"" + (dir / "sweep").string() +
                                      "\" --set iter_max=30 sweep --var paths --grid 1,2,3,4 --reps 3 > /dev/null";
            ran = ran && std::system(opt.c_str()) == 0 && std::system(sweep.c_str()) == 0;
        }
        std::size_t compared = 0, differing = 0;
        for (const char *f : {"optimize/trace.csv", "optimize/summary.txt", "optimize/config.txt", "sweep/sweep_paths.csv"})
        {
            const std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
            ++compared;
            if (a.empty() || a != b) ++differing;
        }
        fs::remove_all(root);
        report(9, ran && differing == 0,
               fmt("two invocations of optimize and sweep: %zu files compared, %zu differ", compared, differing));
    }
}

int main()
{
    criterion_gradients();
    criterion_dual_form();
    criterion_feasibility();
    criterion_convergence();
    criterion_sweeps();
    criterion_alpha_peak();
    criterion_one_dim();
    criterion_metropolis();
    criterion_determinism();
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
