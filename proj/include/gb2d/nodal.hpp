#pragma once

// Zero-contour tracing by marching squares.  Crossings on cell edges are
// refined by bisection on the exact function; ambiguous (saddle) cells are
// resolved by the sign at the cell center.  Zero counts as positive.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gb2d/asymptotic.hpp"
#include "gb2d/grid.hpp"
#include "gb2d/small.hpp"

namespace gb2d {

struct Point2 {
    double u = 0.0, v = 0.0;
};

using Polyline = std::vector<Point2>;

namespace detail {

inline bool positive(double x) { return x >= 0.0; }

// Zero of f on the segment a -> b (signs differ at the ends), to `tol` in position.
inline Point2 refine_crossing(const std::function<double(double, double)>& f, Point2 a, double fa, Point2 b,
                              double tol) {
    const double len = std::hypot(b.u - a.u, b.v - a.v);
    double lo = 0.0, hi = 1.0;
    const bool pos_lo = positive(fa);
    while ((hi - lo) * len > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(a.u + mid * (b.u - a.u), a.v + mid * (b.v - a.v));
        if (positive(fm) == pos_lo)
            lo = mid;
        else
            hi = mid;
    }
    const double s = 0.5 * (lo + hi);
    return {a.u + s * (b.u - a.u), a.v + s * (b.v - a.v)};
}

}  // namespace detail

/// Traces the zero set of the sampled field `g`, refining with `f`.
inline std::vector<Polyline> trace_zero_contours(const FieldGrid& g, const std::function<double(double, double)>& f,
                                                 double tol = 1e-8) {
    const GridSpec& s = g.spec;
    const int nu = s.nu, nv = s.nv;
    // Edge ids: horizontal (i,j)-(i+1,j) -> j*(nu-1)+i; vertical (i,j)-(i,j+1) -> H + j*nu + i.
    const long H = static_cast<long>(nu - 1) * nv;
    auto hid = [&](int i, int j) { return static_cast<long>(j) * (nu - 1) + i; };
    auto vid = [&](int i, int j) { return H + static_cast<long>(j) * nu + i; };

    std::map<long, Point2> crossing;
    auto edge_point = [&](long id) -> Point2 {
        auto it = crossing.find(id);
        if (it != crossing.end()) return it->second;
        int i0, j0, i1, j1;
        if (id < H) {
            j0 = j1 = static_cast<int>(id / (nu - 1));
            i0 = static_cast<int>(id % (nu - 1));
            i1 = i0 + 1;
        } else {
            const long r = id - H;
            j0 = static_cast<int>(r / nu);
            i0 = i1 = static_cast<int>(r % nu);
            j1 = j0 + 1;
        }
        const Point2 p = detail::refine_crossing(f, {s.u(i0), s.v(j0)}, g.at(i0, j0), {s.u(i1), s.v(j1)}, tol);
        crossing.emplace(id, p);
        return p;
    };

    struct Segment {
        long a, b;  // edge ids
    };
    std::vector<Segment> segs;
    for (int j = 0; j + 1 < nv; ++j) {
        for (int i = 0; i + 1 < nu; ++i) {
            const double c[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
            bool bad = false;
            for (double x : c) bad = bad || !std::isfinite(x);
            if (bad) continue;
            const bool sbl = detail::positive(c[0]), sbr = detail::positive(c[1]);
            const bool str = detail::positive(c[2]), stl = detail::positive(c[3]);
            const long bottom = hid(i, j), top = hid(i, j + 1), left = vid(i, j), right = vid(i + 1, j);
            std::vector<long> cuts;
            if (sbl != sbr) cuts.push_back(bottom);
            if (sbr != str) cuts.push_back(right);
            if (str != stl) cuts.push_back(top);
            if (stl != sbl) cuts.push_back(left);
            if (cuts.size() == 2) {
                segs.push_back({cuts[0], cuts[1]});
            } else if (cuts.size() == 4) {
                const bool centre = detail::positive(f(0.5 * (s.u(i) + s.u(i + 1)), 0.5 * (s.v(j) + s.v(j + 1))));
                if (centre == sbl) {
                    // bl and tr are joined through the centre: cut off br and tl.
                    segs.push_back({bottom, right});
                    segs.push_back({top, left});
                } else {
                    segs.push_back({bottom, left});
                    segs.push_back({top, right});
                }
            }
        }
    }

    // Link segments through shared edges.
    std::map<long, std::vector<std::size_t>> by_edge;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        by_edge[segs[k].a].push_back(k);
        by_edge[segs[k].b].push_back(k);
    }
    std::vector<bool> used(segs.size(), false);
    auto next_seg = [&](long edge, std::size_t from) -> long {
        for (std::size_t k : by_edge[edge])
            if (k != from && !used[k]) return static_cast<long>(k);
        return -1;
    };
    auto walk = [&](std::size_t start, long start_edge) {
        std::vector<long> edges{start_edge};
        std::size_t cur = start;
        long edge = start_edge;
        while (true) {
            used[cur] = true;
            const long other = segs[cur].a == edge ? segs[cur].b : segs[cur].a;
            edges.push_back(other);
            const long nxt = next_seg(other, cur);
            if (nxt < 0) break;
            cur = static_cast<std::size_t>(nxt);
            edge = other;
        }
        Polyline line;
        for (long e : edges) line.push_back(edge_point(e));
        return line;
    };

    std::vector<Polyline> out;
    // Open contours first, starting from edges on the window boundary.
    for (std::size_t k = 0; k < segs.size(); ++k) {
        if (used[k]) continue;
        for (long e : {segs[k].a, segs[k].b}) {
            if (by_edge[e].size() == 1) {
                out.push_back(walk(k, e));
                break;
            }
        }
    }
    for (std::size_t k = 0; k < segs.size(); ++k)
        if (!used[k]) out.push_back(walk(k, segs[k].a));
    return out;
}

/// Nodal lines predicted by the small-argument and large-(v, n) analyses.
inline std::vector<std::string> predicted_nodal_annotations(const GridSpec& s) {
    std::vector<std::string> out;
    const Index& idx = s.index;
    char buf[256];
    if (idx.p == 1 && idx.q >= 2) {
        if (auto slope = small_nodal_slope(idx.n, idx.q)) {
            std::snprintf(buf, sizeof buf, "# predicted small-argument line through origin: v = %.17g * u", *slope);
            out.push_back(buf);
        }
    }
    if (idx.p == 1 && idx.q == 2 && idx.n != 0) {
        for (int j = 0; j < s.nv; ++j) {
            const double v = s.v(j);
            std::vector<double> us;
            try {
                us = nodal_lines_large_vn(idx.n, v);
            } catch (const regime_error&) {
                continue;
            }
            std::string line;
            std::snprintf(buf, sizeof buf, "# predicted v=%.17g u:", v);
            line = buf;
            int count = 0;
            for (double u : us) {
                if (u < s.u_min || u > s.u_max) continue;
                std::snprintf(buf, sizeof buf, " %.12g", u);
                line += buf;
                ++count;
            }
            if (count) out.push_back(line);
        }
    }
    return out;
}

/// `u v` pairs, one polyline per block, blank line between blocks.
inline void write_polylines(std::ostream& os, const std::vector<Polyline>& lines,
                            const std::vector<std::string>& annotations) {
    for (const auto& a : annotations) os << a << '\n';
    char buf[80];
    for (std::size_t k = 0; k < lines.size(); ++k) {
        if (k) os << '\n';
        for (const Point2& p : lines[k]) {
            std::snprintf(buf, sizeof buf, "%.12g %.12g\n", p.u, p.v);
            os << buf;
        }
    }
}

}  // namespace gb2d
