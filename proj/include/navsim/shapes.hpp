#pragma once

#include <cmath>
#include <vector>

#include "navsim/obstacle.hpp"
#include "navsim/segment.hpp"
#include "navsim/vec2.hpp"

namespace navsim::shapes {

// Circle boundary split into four ccw arcs.
inline std::vector<BoundarySegment> circle(Vec2 center, double radius) {
    std::vector<BoundarySegment> segs;
    for (int k = 0; k < 4; ++k) {
        const double a0 = k * kPi / 2.0;
        segs.push_back(
            BoundarySegment::arc(center, radius, a0, a0 + kPi / 2.0, true));
    }
    return segs;
}

// Replaces every corner of a ccw simple polygon by a tangent fillet
// arc, producing a C1 line/arc chain. Left turns (convex corners)
// become ccw arcs, right turns (concavities) become cw arcs. The
// fillet radius may be set per vertex; radii must be small enough
// that tangent points stay within the adjacent edges.
inline std::vector<BoundarySegment> filleted_polygon(
    const std::vector<Vec2>& vertices, const std::vector<double>& radii) {
    const std::size_t n = vertices.size();
    if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
    if (radii.size() != n) throw GeometryError("one radius per vertex");

    struct Fillet {
        Vec2 tp_in, tp_out, center;
        double a_in, a_out;
        bool ccw;
        double r;
    };
    std::vector<Fillet> fillets(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 prev = vertices[(i + n - 1) % n];
        const Vec2 v = vertices[i];
        const Vec2 next = vertices[(i + 1) % n];
        const Vec2 u1 = (v - prev).normalized();
        const Vec2 u2 = (next - v).normalized();
        const double turn = wrap_angle(u2.angle() - u1.angle());
        if (std::abs(turn) < 1e-12)
            throw GeometryError("collinear vertex; remove it");
        const double r = radii[i];
        const double t = r * std::tan(std::abs(turn) / 2.0);
        Fillet& f = fillets[i];
        f.r = r;
        f.ccw = turn > 0.0;
        f.tp_in = v - u1 * t;
        f.tp_out = v + u2 * t;
        const Vec2 n1 = (turn > 0.0) ? u1.perp() : -u1.perp();
        f.center = f.tp_in + n1 * r;
        f.a_in = (f.tp_in - f.center).angle();
        f.a_out = (f.tp_out - f.center).angle();
    }

    std::vector<BoundarySegment> segs;
    for (std::size_t i = 0; i < n; ++i) {
        const Fillet& f = fillets[i];
        segs.push_back(
            BoundarySegment::arc(f.center, f.r, f.a_in, f.a_out, f.ccw));
        const Vec2 a = f.tp_out;
        const Vec2 b = fillets[(i + 1) % n].tp_in;
        if (dist(a, b) > 1e-9) segs.push_back(BoundarySegment::line(a, b));
    }
    return segs;
}

inline std::vector<BoundarySegment> filleted_polygon(
    const std::vector<Vec2>& vertices, double radius) {
    return filleted_polygon(vertices,
                            std::vector<double>(vertices.size(), radius));
}

// Fillet radii chosen by corner type: convex corners (left turns in a
// ccw polygon) get r_convex, concave corners get r_concave.
inline std::vector<BoundarySegment> filleted_polygon(
    const std::vector<Vec2>& vertices, double r_convex, double r_concave) {
    const std::size_t n = vertices.size();
    std::vector<double> radii(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 prev = vertices[(i + n - 1) % n];
        const Vec2 v = vertices[i];
        const Vec2 next = vertices[(i + 1) % n];
        const double turn =
            wrap_angle((next - v).angle() - (v - prev).angle());
        radii[i] = turn > 0.0 ? r_convex : r_concave;
    }
    return filleted_polygon(vertices, radii);
}

}  // namespace navsim::shapes
