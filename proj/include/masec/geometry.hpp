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

#ifndef MASEC_GEOMETRY_HPP
#define MASEC_GEOMETRY_HPP

#include "masec/rng.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace masec
{
    /// Cartesian point in meters (antenna, Bob or virtual-Eve location).
    using Position3 = Eigen::Vector3d;

    /// Raised when an Eve region or an array geometry admits no feasible point.
    class InfeasibleGeometry : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Axis-aligned movement box of one antenna. A zero-thickness axis
    /// (min == max) pins that coordinate.
    struct MoveRegion
    {
        double x_min = 0, x_max = 0;
        double y_min = 0, y_max = 0;
        double z_min = 0, z_max = 0;

        static MoveRegion point(const Position3 &p)
        {
            return {p.x(), p.x(), p.y(), p.y(), p.z(), p.z()};
        }

        static MoveRegion box(const Position3 &a, const Position3 &b)
        {
            return {std::min(a.x(), b.x()), std::max(a.x(), b.x()),
                    std::min(a.y(), b.y()), std::max(a.y(), b.y()),
                    std::min(a.z(), b.z()), std::max(a.z(), b.z())};
        }

        bool valid() const { return x_min <= x_max && y_min <= y_max && z_min <= z_max; }

        bool contains(const Position3 &p, double tol = 0.0) const
        {
            return p.x() >= x_min - tol && p.x() <= x_max + tol &&
                   p.y() >= y_min - tol && p.y() <= y_max + tol &&
                   p.z() >= z_min - tol && p.z() <= z_max + tol;
        }

        Position3 center() const
        {
            return {(x_min + x_max) / 2, (y_min + y_max) / 2, (z_min + z_max) / 2};
        }
    };

    /// Square ground region of side 2r centred at (d, 0, 0) that may hold the
    /// eavesdropper, seen from a base station of height h at the origin.
    struct EveRegion
    {
        double center_distance = 50.0;
        double half_length = 2.0;
        double bs_height = 10.0;

        void validate() const
        {
            if (!(half_length > 0.0) || !(bs_height > 0.0))
                throw InfeasibleGeometry("eve region: half_length and bs_height must be positive");
            if (!(center_distance > half_length))
                throw InfeasibleGeometry("eve region: center_distance (" + std::to_string(center_distance) +
                                         ") must exceed half_length (" + std::to_string(half_length) + ")");
        }
    };

    struct AngleInterval
    {
        double lo;
        double hi;

        bool contains(double a, double tol = 1e-12) const { return a >= lo - tol && a <= hi + tol; }
    };

    /// Elevation range [atan(h/(d+r)), atan(h/(d-r))] of the Eve region.
    inline AngleInterval theta_bounds(const EveRegion &region)
    {
        region.validate();
        const double d = region.center_distance, r = region.half_length, h = region.bs_height;
        return {std::atan(h / (d + r)), std::atan(h / (d - r))};
    }

    /// Azimuth range +-asin(r / sqrt((d-r)^2 + r^2)) of the Eve region.
    inline AngleInterval phi_bounds(const EveRegion &region)
    {
        region.validate();
        const double d = region.center_distance, r = region.half_length;
        const double half = std::asin(r / std::hypot(d - r, r));
        return {-half, half};
    }

    /// Ground point seen under elevation theta and azimuth phi.
    inline Position3 eve_position_from_angles(const EveRegion &region, double theta, double phi)
    {
        if (!theta_bounds(region).contains(theta))
            throw std::domain_error("eve_position_from_angles: theta outside the region bounds");
        if (!phi_bounds(region).contains(phi))
            throw std::domain_error("eve_position_from_angles: phi outside the region bounds");
        const double h = region.bs_height;
        const double ground = h / std::tan(theta);
        return {ground * std::cos(phi), ground * std::sin(phi), 0.0};
    }

    /// Inverse of eve_position_from_angles for ground points: (theta, phi).
    inline std::pair<double, double> angles_of(const EveRegion &region, const Position3 &p)
    {
        const double ground = std::hypot(p.x(), p.y());
        return {std::atan2(region.bs_height, ground), std::atan2(p.y(), p.x())};
    }

    enum class EveSampling
    {
        uniform, ///< i.i.d. uniform over the square
        lattice  ///< ceil(sqrt(M)) x ceil(sqrt(M)) cell-centred grid, first M points
    };

    inline std::vector<Position3> sample_virtual_eves(const EveRegion &region, std::size_t m, Rng &rng,
                                                      EveSampling law = EveSampling::uniform)
    {
        region.validate();
        if (m == 0) throw std::invalid_argument("sample_virtual_eves: m must be >= 1");
        const double d = region.center_distance, r = region.half_length;
        std::vector<Position3> out;
        out.reserve(m);
        if (law == EveSampling::uniform)
        {
            for (std::size_t i = 0; i < m; ++i)
            {
                const double x = uniform(rng, d - r, d + r);
                const double y = uniform(rng, -r, r);
                out.emplace_back(x, y, 0.0);
            }
            return out;
        }
        const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
        const double cell = 2.0 * r / static_cast<double>(side);
        for (std::size_t i = 0; i < m; ++i)
        {
            const auto ix = i % side, iy = i / side;
            out.emplace_back(d - r + (ix + 0.5) * cell, -r + (iy + 0.5) * cell, 0.0);
        }
        return out;
    }

    /// Per-axis clamp into the movement box (closest box point).
    inline Position3 project_box(const Position3 &p, const MoveRegion &region)
    {
        return {std::clamp(p.x(), region.x_min, region.x_max),
                std::clamp(p.y(), region.y_min, region.y_max),
                std::clamp(p.z(), region.z_min, region.z_max)};
    }

    /// Pushes `candidate` radially out to distance d_min from `anchor` when it
    /// is closer than d_min; otherwise returns it unchanged. A candidate that
    /// coincides with the anchor is pushed along +x.
    inline Position3 project_min_distance(const Position3 &candidate, const Position3 &anchor, double d_min)
    {
        const Position3 diff = candidate - anchor;
        const double dist = diff.norm();
        if (dist >= d_min) return candidate;
        if (dist == 0.0) return anchor + Position3(d_min, 0.0, 0.0);
        return anchor + d_min * (diff / dist);
    }

    /// Which antenna pairs the minimum-spacing constraint covers.
    enum class SpacingRule
    {
        consecutive, ///< each movable antenna against the previous movable one
        all_pairs    ///< each movable antenna against every other movable one
    };

    inline constexpr double spacing_rel_tol = 1e-12;

    struct ArrayLayout
    {
        std::vector<Position3> positions;
        std::vector<MoveRegion> regions;
        std::vector<bool> movable;
        double d_min = 0.0;
        SpacingRule spacing = SpacingRule::consecutive;

        std::size_t size() const { return positions.size(); }

        std::size_t movable_count() const
        {
            return static_cast<std::size_t>(std::count(movable.begin(), movable.end(), true));
        }

        /// Index of the movable antenna preceding n, if any.
        std::optional<std::size_t> spacing_anchor(std::size_t n) const
        {
            for (std::size_t i = n; i-- > 0;)
                if (movable[i]) return i;
            return std::nullopt;
        }

        /// Index of the movable antenna following n, if any.
        std::optional<std::size_t> spacing_successor(std::size_t n) const
        {
            for (std::size_t i = n + 1; i < size(); ++i)
                if (movable[i]) return i;
            return std::nullopt;
        }

        /// Spacing constraints that involve antenna n placed at p. In
        /// consecutive mode both neighbouring pairs are checked, since moving n
        /// also changes its distance to the next movable antenna.
        bool spacing_ok(std::size_t n, const Position3 &p) const
        {
            const double limit = d_min * (1.0 - spacing_rel_tol);
            if (spacing == SpacingRule::consecutive)
            {
                const auto a = spacing_anchor(n);
                const auto b = spacing_successor(n);
                return (!a || (p - positions[*a]).norm() >= limit) &&
                       (!b || (p - positions[*b]).norm() >= limit);
            }
            for (std::size_t i = 0; i < size(); ++i)
                if (i != n && movable[i] && (p - positions[i]).norm() < limit) return false;
            return true;
        }

        /// Box and minimum-spacing constraints for every movable antenna.
        bool is_feasible() const
        {
            for (std::size_t n = 0; n < size(); ++n)
            {
                if (!movable[n]) continue;
                if (!regions[n].contains(positions[n], 1e-15)) return false;
                if (!spacing_ok(n, positions[n])) return false;
            }
            return true;
        }

        void validate() const
        {
            if (size() < 2) throw InfeasibleGeometry("array layout: at least two antennas required");
            if (regions.size() != size() || movable.size() != size())
                throw std::invalid_argument("array layout: positions, regions and movable mask differ in length");
            if (!(d_min > 0.0)) throw InfeasibleGeometry("array layout: d_min must be positive");
            for (const auto &r : regions)
                if (!r.valid()) throw InfeasibleGeometry("array layout: movement box with min > max");
            for (const auto &p : positions)
                if (!p.allFinite()) throw std::invalid_argument("array layout: non-finite position");
            if (!is_feasible())
                throw InfeasibleGeometry("array layout: initial positions violate the box or spacing constraints");
        }
    };

    /// Maps an unconstrained candidate for antenna n to a feasible position:
    /// min-distance projection against the spacing anchor, then the box clamp,
    /// then one more spacing check. Returns nullopt when the move has to be
    /// rejected (caller keeps the previous position).
    inline std::optional<Position3> project_position(const ArrayLayout &layout, std::size_t n, const Position3 &candidate)
    {
        Position3 p = candidate;
        if (const auto a = layout.spacing_anchor(n))
            p = project_min_distance(p, layout.positions[*a], layout.d_min);
        p = project_box(p, layout.regions[n]);
        if (!layout.spacing_ok(n, p)) return std::nullopt;
        return p;
    }
}

#endif // MASEC_GEOMETRY_HPP
