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

#ifndef MASEC_CONFIG_HPP
#define MASEC_CONFIG_HPP

// Flat "key = value" scenario files. One entry per line, '#' starts a
// comment, keys are the ScenarioConfig field names. Unknown keys are errors.

#include "masec/harness.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace masec
{
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    namespace detail
    {
        inline std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string_view::npos) return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        template <class T>
        T parse_number(std::string_view key, std::string_view text)
        {
            T v{};
            const auto *first = text.data(), *last = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last || text.empty())
                throw ConfigError("config: invalid value '" + std::string(text) + "' for key '" + std::string(key) +
                                  "'");
            return v;
        }

        inline double parse_optional_length(std::string_view key, std::string_view text)
        {
            if (text == "auto") return nan_value;
            return parse_number<double>(key, text);
        }

        inline bool parse_bool(std::string_view key, std::string_view text)
        {
            if (text == "1" || text == "true") return true;
            if (text == "0" || text == "false") return false;
            throw ConfigError("config: invalid boolean '" + std::string(text) + "' for key '" + std::string(key) + "'");
        }

        inline std::string format_optional_length(double v) { return std::isnan(v) ? "auto" : format_double(v); }

        struct Field
        {
            const char *name;
            std::function<void(ScenarioConfig &, std::string_view)> set;
            std::function<std::string(const ScenarioConfig &)> get;
        };

#define MASEC_DOUBLE_FIELD(f)                                                                                      \
    Field                                                                                                          \
    {                                                                                                              \
        #f, [](ScenarioConfig &c, std::string_view v) { c.f = parse_number<double>(#f, v); },                     \
            [](const ScenarioConfig &c) { return format_double(c.f); }                                             \
    }
#define MASEC_COUNT_FIELD(f)                                                                                       \
    Field                                                                                                          \
    {                                                                                                              \
        #f, [](ScenarioConfig &c, std::string_view v) { c.f = parse_number<std::size_t>(#f, v); },                \
            [](const ScenarioConfig &c) { return std::to_string(c.f); }                                            \
    }

        inline const std::vector<Field> &fields()
        {
            static const std::vector<Field> table{
                MASEC_DOUBLE_FIELD(lambda),
                MASEC_COUNT_FIELD(K),
                MASEC_COUNT_FIELD(M),
                MASEC_COUNT_FIELD(N),
                MASEC_COUNT_FIELD(L),
                MASEC_DOUBLE_FIELD(bob_distance_min),
                MASEC_DOUBLE_FIELD(bob_distance_max),
                MASEC_DOUBLE_FIELD(d),
                MASEC_DOUBLE_FIELD(r),
                MASEC_DOUBLE_FIELD(h),
                MASEC_DOUBLE_FIELD(p_max),
                MASEC_DOUBLE_FIELD(noise),
                MASEC_DOUBLE_FIELD(g0_db),
                MASEC_DOUBLE_FIELD(alpha),
                Field{"array_kind", [](ScenarioConfig &c, std::string_view v) {
                          try
                          {
                              c.array_kind = parse_array_kind(std::string(v));
                          }
                          catch (const std::invalid_argument &e)
                          {
                              throw ConfigError(std::string("config: ") + e.what());
                          }
                      },
                      [](const ScenarioConfig &c) { return to_string(c.array_kind); }},
                Field{"movable_mask",
                      [](ScenarioConfig &c, std::string_view v) { c.movable_mask = v == "corners" ? "" : v; },
                      [](const ScenarioConfig &c) { return c.movable_mask.empty() ? "corners" : c.movable_mask; }},
                Field{"move_range",
                      [](ScenarioConfig &c, std::string_view v) { c.move_range = parse_optional_length("move_range", v); },
                      [](const ScenarioConfig &c) { return format_optional_length(c.move_range); }},
                Field{"d_min", [](ScenarioConfig &c, std::string_view v) { c.d_min = parse_optional_length("d_min", v); },
                      [](const ScenarioConfig &c) { return format_optional_length(c.d_min); }},
                Field{"eve_sampling",
                      [](ScenarioConfig &c, std::string_view v) {
                          if (v == "uniform") c.eve_sampling = EveSampling::uniform;
                          else if (v == "lattice") c.eve_sampling = EveSampling::lattice;
                          else throw ConfigError("config: eve_sampling must be uniform or lattice");
                      },
                      [](const ScenarioConfig &c) {
                          return std::string(c.eve_sampling == EveSampling::uniform ? "uniform" : "lattice");
                      }},
                Field{"strict_spacing",
                      [](ScenarioConfig &c, std::string_view v) {
                          c.spacing = parse_bool("strict_spacing", v) ? SpacingRule::all_pairs : SpacingRule::consecutive;
                      },
                      [](const ScenarioConfig &c) { return std::string(c.spacing == SpacingRule::all_pairs ? "1" : "0"); }},
                MASEC_DOUBLE_FIELD(T0),
                MASEC_DOUBLE_FIELD(beta),
                MASEC_DOUBLE_FIELD(delta_w),
                MASEC_DOUBLE_FIELD(delta_t),
                MASEC_DOUBLE_FIELD(tau_w),
                MASEC_DOUBLE_FIELD(tau_t),
                MASEC_COUNT_FIELD(iter_max),
                MASEC_COUNT_FIELD(inner_iter_max),
                MASEC_COUNT_FIELD(mc_w),
                MASEC_COUNT_FIELD(mc_t),
                Field{"gain_model",
                      [](ScenarioConfig &c, std::string_view v) {
                          if (v == "resample") c.gain_model = GainModel::resample;
                          else if (v == "frozen") c.gain_model = GainModel::frozen;
                          else throw ConfigError("config: gain_model must be resample or frozen");
                      },
                      [](const ScenarioConfig &c) {
                          return std::string(c.gain_model == GainModel::resample ? "resample" : "frozen");
                      }},
                Field{"greedy", [](ScenarioConfig &c, std::string_view v) { c.greedy = parse_bool("greedy", v); },
                      [](const ScenarioConfig &c) { return std::string(c.greedy ? "1" : "0"); }},
                Field{"seed", [](ScenarioConfig &c, std::string_view v) { c.seed = parse_number<std::uint64_t>("seed", v); },
                      [](const ScenarioConfig &c) { return std::to_string(c.seed); }},
            };
            return table;
        }

#undef MASEC_DOUBLE_FIELD
#undef MASEC_COUNT_FIELD
    }

    inline std::vector<std::string> config_keys()
    {
        std::vector<std::string> keys;
        for (const auto &f : detail::fields()) keys.emplace_back(f.name);
        return keys;
    }

    inline void set_config_value(ScenarioConfig &cfg, std::string_view key, std::string_view value)
    {
        for (const auto &f : detail::fields())
            if (key == f.name) return f.set(cfg, detail::trim(value));
        throw ConfigError("config: unknown key '" + std::string(key) + "'");
    }

    /// Applies one "key=value" assignment.
    inline void apply_assignment(ScenarioConfig &cfg, std::string_view assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config: expected key=value, got '" + std::string(assignment) + "'");
        set_config_value(cfg, detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
    }

    inline ScenarioConfig parse_config(std::istream &is, ScenarioConfig cfg = {})
    {
        std::string line;
        while (std::getline(is, line))
        {
            std::string_view body(line);
            if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
            body = detail::trim(body);
            if (body.empty()) continue;
            apply_assignment(cfg, body);
        }
        return cfg;
    }

    inline ScenarioConfig load_config_file(const std::string &path, ScenarioConfig cfg = {})
    {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot read config file '" + path + "'");
        try
        {
            return parse_config(is, std::move(cfg));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path + ": " + e.what());
        }
    }

    /// Every key with its effective value, in a fixed order. Parsing the
    /// output yields the same configuration.
    inline std::string dump_config(const ScenarioConfig &cfg)
    {
        std::ostringstream os;
        for (const auto &f : detail::fields()) os << f.name << " = " << f.get(cfg) << '\n';
        return os.str();
    }
}

#endif // MASEC_CONFIG_HPP
