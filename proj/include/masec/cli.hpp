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

#ifndef MASEC_CLI_HPP
#define MASEC_CLI_HPP

#include "masec/config.hpp"
#include "masec/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace masec
{
    namespace exit_code
    {
        inline constexpr int ok = 0;
        inline constexpr int usage = 1;
        inline constexpr int infeasible = 2;
        inline constexpr int audit_failed = 3;
    }

    /// Parses "a,b,c" or the inclusive range "start:stop:step".
    inline std::vector<double> parse_grid(const std::string &text)
    {
        auto number = [&](const std::string &s) {
            try
            {
                std::size_t used = 0;
                const double v = std::stod(s, &used);
                if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
                return v;
            }
            catch (const std::logic_error &)
            {
                throw ConfigError("grid: invalid number '" + s + "' in '" + text + "'");
            }
        };
        std::vector<std::string> parts;
        const char sep = text.find(':') != std::string::npos ? ':' : ',';
        std::string cur;
        for (char c : text)
        {
            if (c == sep)
            {
                parts.push_back(cur);
                cur.clear();
            }
            else if (c != ' ') cur.push_back(c);
        }
        parts.push_back(cur);

        std::vector<double> grid;
        if (sep == ',')
        {
            for (const auto &p : parts) grid.push_back(number(p));
            return grid;
        }
        if (parts.size() != 3) throw ConfigError("grid: range must be start:stop:step, got '" + text + "'");
        const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0) || b < a) throw ConfigError("grid: range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i)
        {
            // Round to 12 significant digits so that 2 + 3 * 0.1 prints as 2.3.
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", a + static_cast<double>(i) * step);
            grid.push_back(std::stod(buf));
        }
        return grid;
    }

    inline std::string gnuplot_stub(const std::string &csv_name, const std::string &var)
    {
        return "# gnuplot script for " + csv_name +
               "\n"
               "set datafile separator ','\n"
               "set xlabel '" + var + "'\n"
               "set ylabel 'mean secrecy rate (bits/s/Hz)'\n"
               "set key left top\n"
               "plot for [m in \"MA ULA UPA\"] '" + csv_name +
               "' using 2:(strcol(3) eq m ? $5 : 1/0) every ::1 with linespoints title m\n";
    }

    struct CliOptions
    {
        std::string config;
        std::uint64_t seed = 0;
        std::string out = ".";
        std::size_t reps = 200;
        std::string var;
        std::string grid;
        bool greedy = false;
        std::size_t instances = 100;
        double tolerance = 0.0;
        bool gnuplot = false;
        std::vector<std::string> sets;
    };

    namespace detail
    {
        inline void write_text(const std::filesystem::path &path, const std::string &text)
        {
            auto os = open_output(path.string());
            os << text;
            if (!os.flush()) throw std::runtime_error("write to '" + path.string() + "' failed");
        }

        inline std::filesystem::path prepare_out(const std::string &dir)
        {
            std::filesystem::path p(dir);
            std::error_code ec;
            std::filesystem::create_directories(p, ec);
            if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
            return p;
        }

        inline int cmd_optimize(const ScenarioConfig &cfg, const CliOptions &opt, std::ostream &out)
        {
            const Scenario sc = build_scenario(cfg, cfg.seed);
            const SaResult res = sa_pga(sc.model, sc.initial, cfg.noise, sa_config(cfg), cfg.seed);
            const Solution &best = res.best;
            const auto rep = secrecy_report(realize(sc.model, best.layout.positions), best.bf, cfg.noise);

            const auto dir = prepare_out(opt.out);
            {
                auto os = open_output((dir / "trace.csv").string());
                write_trace(os, res.trace);
            }
            std::ostringstream s;
            s << "array_kind = " << to_string(cfg.array_kind) << '\n'
              << "seed = " << cfg.seed << '\n'
              << "iterations = " << cfg.iter_max << '\n'
              << "accepted = " << res.accepted << '\n'
              << "initial_objective = " << format_double(sc.initial.objective) << '\n'
              << "initial_secrecy = " << format_double(sc.initial.secrecy) << '\n'
              << "objective = " << format_double(best.objective) << '\n'
              << "secrecy = " << format_double(best.secrecy) << '\n'
              << "worst_bob = " << rep.worst_k << '\n'
              << "best_eve = " << rep.best_m << '\n'
              << "bob_capacity = " << format_double(rep.bob_capacity()) << '\n'
              << "eve_capacity = " << format_double(rep.eve_capacity()) << '\n'
              << "power = " << format_double(best.bf.power()) << '\n'
              << "feasible = " << (best.layout.is_feasible() && best.bf.feasible() ? 1 : 0) << '\n';
            for (std::size_t n = 0; n < best.layout.size(); ++n)
            {
                const auto &p = best.layout.positions[n];
                s << "position_" << n << " = " << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
                  << format_double(p.z()) << '\n';
            }
            write_text(dir / "summary.txt", s.str());
            write_text(dir / "config.txt", dump_config(cfg));
            out << "secrecy " << format_double(best.secrecy) << " (initial " << format_double(sc.initial.secrecy)
                << "), accepted " << res.accepted << '/' << cfg.iter_max << ", wrote " << (dir / "trace.csv").string()
                << '\n';
            return exit_code::ok;
        }

        inline int cmd_check_grad(const ScenarioConfig &cfg, const CliOptions &opt, bool tolerance_set,
                                  std::ostream &out)
        {
            GradientAudit a = audit_gradients(cfg, opt.instances, cfg.seed);
            if (tolerance_set) a.tol_w = a.tol_t = opt.tolerance;
            out << "instances " << a.instances << '\n'
                << "grad_w max_rel_error " << format_double(a.max_error_w) << " tol " << format_double(a.tol_w)
                << (a.max_error_w < a.tol_w ? " PASS" : " FAIL") << '\n'
                << "grad_t max_rel_error " << format_double(a.max_error_t) << " tol " << format_double(a.tol_t)
                << (a.max_error_t < a.tol_t ? " PASS" : " FAIL") << '\n';
            return a.passed() ? exit_code::ok : exit_code::audit_failed;
        }

        inline int cmd_sweep(const ScenarioConfig &cfg, const CliOptions &opt, std::ostream &out)
        {
            const SweepVar var = parse_sweep_var(opt.var);
            const auto grid = parse_grid(opt.grid);
            const auto results = run_sweep(var, grid, opt.reps, cfg, cfg.seed);
            const auto dir = prepare_out(opt.out);
            const std::string name = "sweep_" + to_string(var) + ".csv";
            write_results((dir / name).string(), results);
            if (opt.gnuplot) write_text(dir / ("sweep_" + to_string(var) + ".gp"), gnuplot_stub(name, to_string(var)));
            out << "wrote " << results.size() << " rows to " << (dir / name).string() << '\n';
            return exit_code::ok;
        }

        inline int cmd_onedsearch(const ScenarioConfig &cfg, const CliOptions &opt, std::ostream &out)
        {
            const OneDimResult res = one_dim_search(cfg, cfg.seed);
            const auto dir = prepare_out(opt.out);
            {
                auto os = open_output((dir / "onedsearch.csv").string());
                write_onedsearch(os, res);
            }
            out << "baseline secrecy " << format_double(res.baseline_secrecy) << ", best move_parts "
                << format_double(res.move_parts.back().secrecy) << '\n';
            return exit_code::ok;
        }
    }

    /// Entry point of the command-line tool. Returns the process exit code.
    inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Movable-antenna secrecy-rate optimization"};
        app.require_subcommand(1);
        app.fallthrough();
        CliOptions opt;

        auto *config_opt = app.add_option("--config", opt.config, "scenario file with key = value lines");
        auto *seed_opt = app.add_option("--seed", opt.seed, "base seed (default 0)");
        app.add_option("--out", opt.out, "output directory")->capture_default_str();
        app.add_option("--set", opt.sets, "override one config key: key=value (repeatable)");
        app.add_flag("--greedy", opt.greedy, "disable annealing: never accept a worse candidate");

        auto *optimize = app.add_subcommand("optimize", "run SA-PGA on one scenario");
        auto *check = app.add_subcommand("check-grad", "finite-difference audit of the analytic gradients");
        check->add_option("--instances", opt.instances, "random instances")->capture_default_str();
        auto *tol_opt = check->add_option("--tolerance", opt.tolerance, "relative error threshold for both audits");
        auto *sweep = app.add_subcommand("sweep", "Monte-Carlo comparison of MA, ULA and UPA");
        sweep->add_option("--var", opt.var, "paths, alpha, noise or distance")->required();
        sweep->add_option("--grid", opt.grid, "a,b,c or start:stop:step")->required();
        sweep->add_option("--reps", opt.reps, "replications per grid point")->capture_default_str();
        sweep->add_flag("--gnuplot", opt.gnuplot, "also write a gnuplot script");
        auto *onedsearch = app.add_subcommand("onedsearch", "one-dimensional position search on a ULA");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            if (e.get_exit_code() == 0)
            {
                out << app.help();
                return exit_code::ok;
            }
            err << "error: " << e.what() << '\n';
            return exit_code::usage;
        }

        try
        {
            ScenarioConfig cfg;
            if (onedsearch->parsed())
            {
                cfg.array_kind = ArrayKind::ULA;
                cfg.N = 6;
            }
            if (config_opt->count() > 0) cfg = load_config_file(opt.config, cfg);
            for (const auto &s : opt.sets) apply_assignment(cfg, s);
            if (seed_opt->count() > 0) cfg.seed = opt.seed;
            if (opt.greedy) cfg.greedy = true;
            cfg.validate();

            if (optimize->parsed()) return detail::cmd_optimize(cfg, opt, out);
            if (check->parsed()) return detail::cmd_check_grad(cfg, opt, tol_opt->count() > 0, out);
            if (sweep->parsed()) return detail::cmd_sweep(cfg, opt, out);
            return detail::cmd_onedsearch(cfg, opt, out);
        }
        catch (const InfeasibleGeometry &e)
        {
            err << "infeasible scenario: " << e.what() << '\n';
            return exit_code::infeasible;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_code::usage;
        }
    }
}

#endif // MASEC_CLI_HPP
