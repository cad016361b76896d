#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "navsim/obstacle.hpp"
#include "navsim/singular.hpp"
#include "navsim/target_frame.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

// The smaller region cut from an equidistant curve (or the boundary
// itself) by a chord between two of its points. Degree counts the
// singular parts strictly inside the enclosed arc.
struct Cave {
    double s_minus = 0.0;
    double s_plus = 0.0;
    bool arc_forward = true;  // enclosed arc runs s_minus -> s_plus in +s
    std::vector<Vec2> polygon;
    int degree = 0;
    bool contains_target = false;

    bool contains(const Vec2& p) const {
        double total = 0.0;
        for (std::size_t i = 0; i < polygon.size(); ++i) {
            const Vec2 a = polygon[i] - p;
            const Vec2 b = polygon[(i + 1) % polygon.size()] - p;
            total += std::atan2(a.cross(b), a.dot(b));
        }
        return std::lround(total / kTwoPi) != 0;
    }
};

namespace detail {

inline bool segments_properly_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const double d1 = (a1 - a0).cross(b0 - a0);
    const double d2 = (a1 - a0).cross(b1 - a0);
    const double d3 = (b1 - b0).cross(a0 - b0);
    const double d4 = (b1 - b0).cross(a1 - b0);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Extracts the sample run of `pc` between boundary abscissas a -> b in
// increasing (cyclic) parameter order, endpoints interpolated.
inline std::vector<Vec2> arc_points(const PolyCurve& pc, double a, double b,
                                    double L) {
    std::vector<Vec2> out;
    const std::size_t n = pc.size();
    auto lerp_at = [&](double s) -> Vec2 {
        // Locate the sample interval containing s.
        std::size_t i =
            std::upper_bound(pc.s.begin(), pc.s.end(), s) - pc.s.begin();
        const std::size_t i0 = (i == 0) ? n - 1 : i - 1;
        const std::size_t i1 = i % n;
        double s0 = pc.s[i0], s1 = pc.s[i1];
        if (s1 <= s0) s1 += L;
        double ss = s;
        if (ss < s0) ss += L;
        const double t = clamp((ss - s0) / std::max(s1 - s0, 1e-15), 0.0, 1.0);
        return pc.points[i0] + (pc.points[i1] - pc.points[i0]) * t;
    };
    out.push_back(lerp_at(a));
    double span = b - a;
    if (span <= 0.0) span += L;
    const std::size_t first =
        std::upper_bound(pc.s.begin(), pc.s.end(), a) - pc.s.begin();
    for (std::size_t cnt = 0; cnt < n; ++cnt) {
        const std::size_t k = (first + cnt) % n;
        double sk = pc.s[k] - a;
        if (sk <= 0.0) sk += L;
        if (sk >= span) break;
        out.push_back(pc.points[k]);
    }
    out.push_back(lerp_at(b));
    return out;
}

}  // namespace detail

// Builds the cave of the offset curve C(d) cut by the chord between
// its points at boundary abscissas s_minus, s_plus. The open chord
// must stay outside the region bounded by the curve.
inline Cave cave_between(const Obstacle& ob, double d, double s_minus,
                         double s_plus, const Vec2& target,
                         const PolyCurve* pre = nullptr,
                         const std::vector<SingularPart>* parts = nullptr) {
    const double L = ob.perimeter();
    PolyCurve local;
    if (!pre) {
        local = ob.polygonize(d, 1e-4 * std::max(1.0, L / kTwoPi));
        pre = &local;
    }
    const PolyCurve& pc = *pre;

    const Vec2 p_minus = ob.offset_point(s_minus, d).first;
    const Vec2 p_plus = ob.offset_point(s_plus, d).first;

    // Chord validity: midpoint samples outside the bounded region and
    // no proper intersection with the curve away from the endpoints.
    for (int k = 1; k < 8; ++k) {
        const Vec2 q = p_minus + (p_plus - p_minus) * (k / 8.0);
        if (pc.contains(q)) throw GeometryError("chord enters the region");
    }

    auto make_polygon = [&](bool forward) {
        std::vector<Vec2> poly =
            forward ? detail::arc_points(pc, ob.reduce(s_minus),
                                         ob.reduce(s_plus), L)
                    : detail::arc_points(pc, ob.reduce(s_plus),
                                         ob.reduce(s_minus), L);
        return poly;  // closed implicitly by the chord back to start
    };

    const std::vector<Vec2> fwd = make_polygon(true);
    const std::vector<Vec2> bwd = make_polygon(false);
    auto area = [](const std::vector<Vec2>& poly) {
        double a = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
            a += poly[i].cross(poly[(i + 1) % poly.size()]);
        return std::abs(0.5 * a);
    };

    Cave cave;
    cave.s_minus = ob.reduce(s_minus);
    cave.s_plus = ob.reduce(s_plus);
    cave.arc_forward = area(fwd) <= area(bwd);
    cave.polygon = cave.arc_forward ? fwd : bwd;

    // Degree: singular parts of C(d) with abscissa strictly inside the
    // enclosed arc. The zeta level set of C(d) is that of the boundary
    // shifted by d.
    std::vector<SingularPart> local_parts;
    if (!parts) {
        local_parts = scan_zeros(ob, target, -d).crossings;
        parts = &local_parts;
    }
    const double a = cave.arc_forward ? cave.s_minus : cave.s_plus;
    const double b = cave.arc_forward ? cave.s_plus : cave.s_minus;
    double span = b - a;
    if (span <= 0.0) span += L;
    for (const auto& part : *parts) {
        double rel = part.mid() - a;
        if (rel <= 0.0) rel += L;
        const double margin = 1e-6 * L;
        if (rel > margin && rel < span - margin) cave.degree += 1;
    }
    cave.contains_target = cave.contains(target);
    return cave;
}

// True iff r lies in a simple cave of N(d_trig) whose chord endpoints
// lie on a common ray from the target. Candidate chords are found by
// casting rays from the target through samples of C(d_trig) and
// pairing consecutive intersections whose connecting gap stays
// outside N(d_trig).
inline bool is_locked(const Vec2& r, const Obstacle& ob, const Vec2& target,
                      double d_trig) {
    const auto [dr, sr] = ob.distance(r);
    if (dr <= d_trig) return false;  // locked is defined outside N(d_trig)

    const PolyCurve pc = ob.polygonize(d_trig, 1e-3);
    const std::size_t n = pc.size();

    // All intersections of the ray target->dir with the curve, as
    // (distance from target, interpolated abscissa).
    auto ray_hits = [&](const Vec2& dir) {
        std::vector<std::pair<double, double>> hits;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = pc.points[i];
            const Vec2 b = pc.points[(i + 1) % n];
            const Vec2 e = b - a;
            const double denom = dir.cross(e);
            if (std::abs(denom) < 1e-14) continue;
            const Vec2 w = a - target;
            const double t_ray = w.cross(e) / denom;   // along the ray
            const double t_seg = w.cross(dir) / denom; // along the edge
            if (t_ray <= 0.0 || t_seg < 0.0 || t_seg >= 1.0) continue;
            double s0 = pc.s[i], s1 = pc.s[(i + 1) % n];
            if (s1 <= s0) s1 += ob.perimeter();
            hits.emplace_back(t_ray, ob.reduce(s0 + (s1 - s0) * t_seg));
        }
        std::sort(hits.begin(), hits.end());
        return hits;
    };

    const int rays = 720;
    for (int k = 0; k < rays; ++k) {
        const Vec2 dir = from_angle(kTwoPi * k / rays);
        const auto hits = ray_hits(dir);
        for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
            const Vec2 pa = target + dir * hits[i].first;
            const Vec2 pb = target + dir * hits[i + 1].first;
            const Vec2 mid = 0.5 * (pa + pb);
            if (pc.contains(mid)) continue;  // gap runs inside N(d_trig)
            try {
                const Cave cave = cave_between(ob, d_trig, hits[i].second,
                                               hits[i + 1].second, target,
                                               &pc);
                if (cave.contains(r)) return true;
            } catch (const GeometryError&) {
                continue;  // degenerate chord; skip candidate
            }
        }
    }
    return false;
}

}  // namespace navsim
