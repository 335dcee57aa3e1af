#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/field.hpp"

namespace wigsmooth {

using ContourPoint = std::array<double, 2>;  // (axis1, axis2)
using Polyline = std::vector<ContourPoint>;

struct ContourSet {
    std::vector<double> levels;
    std::vector<std::vector<Polyline>> polylines;  // one list per level
};

inline bool polyline_closed(const Polyline& p) {
    return p.size() > 3 && p.front()[0] == p.back()[0] && p.front()[1] == p.back()[1];
}

namespace detail {

struct Segment {
    std::uint64_t key_a, key_b;
    ContourPoint pt_a, pt_b;
};

// Marching squares over one level. Corners are "inside" when value >= level;
// crossing points interpolate linearly along cell edges. Saddle cells are
// disambiguated by the cell-center average.
inline std::vector<Polyline> march_level(const DistributionField& f, double level) {
    const std::size_t n1 = f.n1(), n2 = f.n2();
    const auto x1 = f.axis1().samples();
    const auto x2 = f.axis2().samples();

    // Edge keys: x-edges (along axis1) come first, y-edges after.
    auto xkey = [n2](std::size_t i, std::size_t j) -> std::uint64_t {
        return static_cast<std::uint64_t>(i) * n2 + j;
    };
    auto ykey = [n1, n2](std::size_t i, std::size_t j) -> std::uint64_t {
        return static_cast<std::uint64_t>(n1) * n2 + static_cast<std::uint64_t>(i) * n2 + j;
    };

    auto cross_x = [&](std::size_t i, std::size_t j) -> ContourPoint {
        const double va = f(i, j), vb = f(i + 1, j);
        const double t = (level - va) / (vb - va);
        return {x1[i] + t * (x1[i + 1] - x1[i]), x2[j]};
    };
    auto cross_y = [&](std::size_t i, std::size_t j) -> ContourPoint {
        const double va = f(i, j), vb = f(i, j + 1);
        const double t = (level - va) / (vb - va);
        return {x1[i], x2[j] + t * (x2[j + 1] - x2[j])};
    };

    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < n1; ++i) {
        for (std::size_t j = 0; j + 1 < n2; ++j) {
            const double f00 = f(i, j), f10 = f(i + 1, j);
            const double f01 = f(i, j + 1), f11 = f(i + 1, j + 1);
            int mask = (f00 >= level ? 1 : 0) | (f10 >= level ? 2 : 0) | (f11 >= level ? 4 : 0) |
                       (f01 >= level ? 8 : 0);
            if (mask == 0 || mask == 15) continue;

            // edge ids within the cell: 0 = bottom x-edge (i,j)-(i+1,j),
            // 1 = right y-edge, 2 = top x-edge, 3 = left y-edge
            auto edge_key = [&](int e) -> std::uint64_t {
                switch (e) {
                    case 0: return xkey(i, j);
                    case 1: return ykey(i + 1, j);
                    case 2: return xkey(i, j + 1);
                    default: return ykey(i, j);
                }
            };
            auto edge_pt = [&](int e) -> ContourPoint {
                switch (e) {
                    case 0: return cross_x(i, j);
                    case 1: return cross_y(i + 1, j);
                    case 2: return cross_x(i, j + 1);
                    default: return cross_y(i, j);
                }
            };
            auto emit = [&](int ea, int eb) {
                segs.push_back({edge_key(ea), edge_key(eb), edge_pt(ea), edge_pt(eb)});
            };

            switch (mask) {
                case 1: case 14: emit(0, 3); break;
                case 2: case 13: emit(0, 1); break;
                case 3: case 12: emit(1, 3); break;
                case 4: case 11: emit(1, 2); break;
                case 6: case 9:  emit(0, 2); break;
                case 7: case 8:  emit(2, 3); break;
                case 5: {  // corners (i,j) and (i+1,j+1) inside
                    const bool center_in = 0.25 * (f00 + f10 + f01 + f11) >= level;
                    if (center_in) { emit(0, 1); emit(2, 3); }
                    else           { emit(0, 3); emit(1, 2); }
                    break;
                }
                case 10: {  // corners (i+1,j) and (i,j+1) inside
                    const bool center_in = 0.25 * (f00 + f10 + f01 + f11) >= level;
                    if (center_in) { emit(0, 3); emit(1, 2); }
                    else           { emit(0, 1); emit(2, 3); }
                    break;
                }
                default: break;
            }
        }
    }

    // Chain segments that share an edge into polylines. std::map keeps the
    // traversal deterministic.
    std::map<std::uint64_t, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        by_edge[segs[s].key_a].push_back(s);
        by_edge[segs[s].key_b].push_back(s);
    }

    std::vector<bool> used(segs.size(), false);
    std::vector<Polyline> out;

    auto walk = [&](std::size_t start, bool from_a) {
        Polyline line;
        std::size_t cur = start;
        bool enter_a = from_a;  // entering endpoint; we append the far endpoint
        line.push_back(enter_a ? segs[cur].pt_a : segs[cur].pt_b);
        const std::uint64_t start_key = enter_a ? segs[cur].key_a : segs[cur].key_b;
        for (;;) {
            used[cur] = true;
            const std::uint64_t far_key = enter_a ? segs[cur].key_b : segs[cur].key_a;
            line.push_back(enter_a ? segs[cur].pt_b : segs[cur].pt_a);
            if (far_key == start_key) break;  // closed loop; endpoints coincide
            const auto& cands = by_edge[far_key];
            std::size_t next = segs.size();
            for (std::size_t c : cands)
                if (!used[c]) { next = c; break; }
            if (next == segs.size()) break;  // open end
            enter_a = segs[next].key_a == far_key;
            cur = next;
        }
        // Loop closure leaves distinct interpolated copies of the same edge
        // point; snap them so front()==back() holds exactly.
        if (line.size() > 3 && std::fabs(line.front()[0] - line.back()[0]) < 1e-12 &&
            std::fabs(line.front()[1] - line.back()[1]) < 1e-12)
            line.back() = line.front();
        out.push_back(std::move(line));
    };

    // Open curves first (an endpoint edge shared by exactly one segment).
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (used[s]) continue;
        const bool a_open = by_edge[segs[s].key_a].size() == 1;
        const bool b_open = by_edge[segs[s].key_b].size() == 1;
        if (a_open)
            walk(s, true);
        else if (b_open)
            walk(s, false);
    }
    // Remaining segments belong to closed loops.
    for (std::size_t s = 0; s < segs.size(); ++s)
        if (!used[s]) walk(s, true);

    return out;
}

}  // namespace detail

/// Marching-squares isolines for each requested level. An empty level list
/// yields an empty ContourSet.
inline ContourSet contour_extract(const DistributionField& field,
                                  const std::vector<double>& levels) {
    ContourSet cs;
    cs.levels = levels;
    cs.polylines.reserve(levels.size());
    for (double lv : levels) {
        if (!std::isfinite(lv)) throw config_error("contour_extract: non-finite level");
        cs.polylines.push_back(detail::march_level(field, lv));
    }
    return cs;
}

/// Number of closed contour components at the given level (the "island
/// count" metric uses level = 0.1 * max).
inline std::size_t count_closed_contours(const DistributionField& field, double level) {
    ContourSet cs = contour_extract(field, {level});
    std::size_t n = 0;
    for (const auto& p : cs.polylines[0])
        if (polyline_closed(p)) ++n;
    return n;
}

/// Default level ladder when a plot does not specify one: 10 levels evenly
/// spaced between 10% and 90% of [min, max].
inline std::vector<double> default_levels(const DistributionField& field) {
    const double lo = field.min_value(), hi = field.max_value();
    std::vector<double> lv(10);
    for (int k = 0; k < 10; ++k) {
        const double frac = 0.1 + 0.8 * static_cast<double>(k) / 9.0;
        lv[static_cast<std::size_t>(k)] = lo + frac * (hi - lo);
    }
    return lv;
}

}  // namespace wigsmooth
