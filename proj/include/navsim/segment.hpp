#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "navsim/vec2.hpp"

namespace navsim {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Local sample of a boundary curve at arc-length abscissa s.
// T is the travel tangent, N the normal rotated +90 deg from T
// (points into the obstacle when the boundary runs with the
// interior on its left). kappa < 0 on concavities.
struct BoundaryPoint {
    double s = 0.0;
    Vec2 position;
    Vec2 tangent;
    Vec2 normal;
    double kappa = 0.0;
};

// One piece of a piecewise line/arc boundary chain.
//
// Lines are given by their endpoints. Arcs are centered circles
// traversed from angle a0 over a signed sweep (positive =
// counterclockwise). A ccw arc has the disc on the left of travel
// (kappa = +1/radius); a cw arc is a concavity (kappa = -1/radius).
class BoundarySegment {
  public:
    enum class Kind { Line, Arc };

    static BoundarySegment line(Vec2 from, Vec2 to) {
        BoundarySegment seg;
        seg.kind_ = Kind::Line;
        seg.p0_ = from;
        seg.p1_ = to;
        seg.length_ = dist(from, to);
        if (!(seg.length_ > 0.0))
            throw GeometryError("line segment has non-positive length");
        seg.dir_ = (to - from) / seg.length_;
        return seg;
    }

    static BoundarySegment arc(Vec2 center, double radius, double from_angle,
                               double to_angle, bool ccw) {
        if (!(radius > 0.0)) throw GeometryError("arc radius must be positive");
        double sweep = to_angle - from_angle;
        if (ccw) {
            while (sweep <= 0.0) sweep += kTwoPi;
            while (sweep > kTwoPi) sweep -= kTwoPi;
        } else {
            while (sweep >= 0.0) sweep -= kTwoPi;
            while (sweep < -kTwoPi) sweep += kTwoPi;
        }
        BoundarySegment seg;
        seg.kind_ = Kind::Arc;
        seg.center_ = center;
        seg.radius_ = radius;
        seg.a0_ = from_angle;
        seg.sweep_ = sweep;
        seg.length_ = radius * std::abs(sweep);
        if (!(seg.length_ > 0.0)) throw GeometryError("arc has zero sweep");
        return seg;
    }

    Kind kind() const { return kind_; }
    double length() const { return length_; }
    bool is_arc() const { return kind_ == Kind::Arc; }
    Vec2 center() const { return center_; }
    double radius() const { return radius_; }
    double start_angle() const { return a0_; }
    double sweep() const { return sweep_; }
    bool ccw() const { return sweep_ > 0.0; }

    Vec2 start() const { return eval(0.0).position; }
    Vec2 end() const { return eval(length_).position; }

    double curvature() const {
        if (kind_ == Kind::Line) return 0.0;
        return ccw() ? 1.0 / radius_ : -1.0 / radius_;
    }

    BoundaryPoint eval(double t) const {
        BoundaryPoint bp;
        bp.s = t;
        if (kind_ == Kind::Line) {
            bp.position = p0_ + dir_ * t;
            bp.tangent = dir_;
            bp.kappa = 0.0;
        } else {
            const double phi = a0_ + sgn(sweep_) * t / radius_;
            bp.position = center_ + radius_ * from_angle(phi);
            const Vec2 radial = from_angle(phi);
            bp.tangent = ccw() ? radial.perp() : -radial.perp();
            bp.kappa = curvature();
        }
        bp.normal = bp.tangent.perp();
        return bp;
    }

    // Closest point of the segment to r: (distance, local abscissa).
    std::pair<double, double> closest(const Vec2& r) const {
        if (kind_ == Kind::Line) {
            const double t = clamp((r - p0_).dot(dir_), 0.0, length_);
            return {dist(r, p0_ + dir_ * t), t};
        }
        // Candidate 1: radial projection, if its angle falls in the sweep.
        const double phi_r = (r - center_).angle();
        double rel = phi_r - a0_;
        if (ccw()) {
            while (rel < 0.0) rel += kTwoPi;
        } else {
            while (rel > 0.0) rel -= kTwoPi;
        }
        double best_d = std::numeric_limits<double>::infinity();
        double best_t = 0.0;
        if (std::abs(rel) <= std::abs(sweep_)) {
            const double t = radius_ * std::abs(rel);
            const Vec2 p = center_ + radius_ * from_angle(phi_r);
            best_d = dist(r, p);
            best_t = t;
        }
        // Candidates 2/3: the arc endpoints.
        for (double t : {0.0, length_}) {
            const double d = dist(r, eval(t).position);
            if (d < best_d) {
                best_d = d;
                best_t = t;
            }
        }
        return {best_d, best_t};
    }

  private:
    Kind kind_ = Kind::Line;
    Vec2 p0_, p1_, dir_;  // line
    Vec2 center_;         // arc
    double radius_ = 0.0;
    double a0_ = 0.0;
    double sweep_ = 0.0;
    double length_ = 0.0;
};

}  // namespace navsim
