#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "navsim/obstacle.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

// Coordinates of the target seen from a boundary point: lambda/zeta
// are the Frenet components of (target - rho(s)), psi their polar
// angle, phi the world polar angle of rho(s) about the target.
struct TargetFrame {
    double lambda = 0.0;
    double zeta = 0.0;
    double psi = 0.0;
    double phi = 0.0;

    double range2() const { return lambda * lambda + zeta * zeta; }
};

inline TargetFrame target_frame(const BoundaryPoint& bp, const Vec2& target) {
    const Vec2 rel = target - bp.position;
    if (rel.norm() < 1e-12)
        throw GeometryError("target lies on the curve");
    TargetFrame tf;
    tf.lambda = rel.dot(bp.tangent);
    tf.zeta = rel.dot(bp.normal);
    tf.psi = std::atan2(tf.zeta, tf.lambda);
    tf.phi = (bp.position - target).angle();
    return tf;
}

inline TargetFrame target_frame(const Obstacle& obstacle, double s,
                                const Vec2& target) {
    return target_frame(obstacle.eval(s), target);
}

// zeta of the offset curve C(d) at boundary abscissa s. For d below
// the regular margin the offset shares the boundary Frenet frame, so
// zeta_C = zeta + d and lambda_C = lambda.
inline double offset_zeta(const Obstacle& obstacle, double s, double d,
                          const Vec2& target) {
    return target_frame(obstacle, s, target).zeta + d;
}

struct ResolutionError : GeometryError {
    using GeometryError::GeometryError;
};

// Total continuous turning of the vector from curve sample to p.
// For a closed curve this is 2*pi times an integer winding number.
inline double winding_about(const PolyCurve& curve, const Vec2& p,
                            bool closed = true) {
    const std::size_t n = curve.points.size();
    if (n < 3) throw GeometryError("curve too short");
    double total = 0.0;
    const std::size_t last = closed ? n : n - 1;
    for (std::size_t i = 0; i < last; ++i) {
        const Vec2 a = p - curve.points[i];
        const Vec2 b = p - curve.points[(i + 1) % n];
        const double step = std::atan2(a.cross(b), a.dot(b));
        if (std::abs(step) >= kPi / 2.0)
            throw ResolutionError("curve sampling too coarse for winding");
        total += step;
    }
    return total;
}

// Turning of the polar angle of points along an open polyline, seen
// from p (the quantity written as an angle swept about p).
inline double turning_about(std::span<const Vec2> points, const Vec2& p) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Vec2 a = points[i] - p;
        const Vec2 b = points[i + 1] - p;
        total += std::atan2(a.cross(b), a.dot(b));
    }
    return total;
}

// Turning of the tangent direction along a polyline.
inline double tangent_turning(std::span<const Vec2> points,
                              bool closed = false) {
    std::vector<Vec2> dirs;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Vec2 d = points[i + 1] - points[i];
        if (d.norm() > 1e-15) dirs.push_back(d);
    }
    if (closed && points.size() > 2) {
        const Vec2 d = points[1] - points[0];
        if (d.norm() > 1e-15) dirs.push_back(d);
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i)
        total += wrap_angle(dirs[i + 1].angle() - dirs[i].angle());
    return total;
}

// Turning of the target vector r = col(lambda, zeta) along the full
// offset curve C(d), evaluated by unwrapping psi over the boundary
// parametrization.
inline double offset_r_turning(const Obstacle& obstacle, double d,
                               const Vec2& target, int samples = 4096) {
    const double L = obstacle.perimeter();
    double total = 0.0;
    TargetFrame prev = target_frame(obstacle, 0.0, target);
    double prev_psi = std::atan2(prev.zeta + d, prev.lambda);
    for (int k = 1; k <= samples; ++k) {
        const double s = L * k / samples;
        const TargetFrame tf = target_frame(obstacle, s, target);
        const double psi = std::atan2(tf.zeta + d, tf.lambda);
        total += wrap_angle(psi - prev_psi);
        prev_psi = psi;
    }
    return total;
}

}  // namespace navsim
