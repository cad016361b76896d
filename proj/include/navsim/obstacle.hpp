#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "navsim/segment.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

inline constexpr double kClosureTol = 1e-9;      // chain closure, meters
inline constexpr double kJointAngleTol = 1e-6;   // tangent continuity, rad

struct PenetrationError : GeometryError {
    using GeometryError::GeometryError;
};

// A closed polyline sampling of a boundary or offset curve.
// `s` keeps the abscissa of the generating boundary, so samples of
// C(d) and of the boundary itself share a common parametrization.
struct PolyCurve {
    std::vector<Vec2> points;
    std::vector<double> s;
    double offset = 0.0;  // distance from the generating boundary

    std::size_t size() const { return points.size(); }

    // Winding number of the closed polyline about p (signed crossing
    // count of the horizontal ray, exact for p off the polyline).
    int winding(const Vec2& p) const {
        int w = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Vec2& a = points[i];
            const Vec2& b = points[(i + 1) % points.size()];
            if (a.y <= p.y) {
                if (b.y > p.y && (b - a).cross(p - a) > 0.0) ++w;
            } else {
                if (b.y <= p.y && (b - a).cross(p - a) < 0.0) --w;
            }
        }
        return w;
    }

    bool contains(const Vec2& p) const { return winding(p) != 0; }

    double signed_area() const {
        double a = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i)
            a += points[i].cross(points[(i + 1) % points.size()]);
        return 0.5 * a;
    }
};

// Closed, positively oriented line/arc boundary with C1 joints.
// Immutable after construction; all caches are built up front.
class Obstacle {
  public:
    // Validates and indexes the chain. The chain must close within
    // 1e-9 m, have tangent-continuous joints, and not self-intersect.
    explicit Obstacle(std::vector<BoundarySegment> segments)
        : segments_(std::move(segments)) {
        if (segments_.empty()) throw GeometryError("empty segment list");
        const std::size_t n = segments_.size();
        cum_.resize(n + 1);
        cum_[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            cum_[i + 1] = cum_[i] + segments_[i].length();
        perimeter_ = cum_[n];

        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = segments_[i];
            const auto& b = segments_[(i + 1) % n];
            if (dist(a.end(), b.start()) > kClosureTol)
                throw GeometryError("open chain");
            const Vec2 ta = a.eval(a.length()).tangent;
            const Vec2 tb = b.eval(0.0).tangent;
            if (std::abs(wrap_angle(tb.angle() - ta.angle())) > kJointAngleTol)
                throw GeometryError("tangent discontinuity at joint");
        }

        boundary_poly_ = polygonize_boundary(0.0);
        if (boundary_poly_.signed_area() <= 0.0)
            throw GeometryError("boundary must be positively oriented");
        check_self_intersection();

        concavity_radius_ = std::numeric_limits<double>::infinity();
        for (const auto& seg : segments_)
            if (seg.is_arc() && !seg.ccw())
                concavity_radius_ = std::min(concavity_radius_, seg.radius());
        regular_margin_ =
            std::min(concavity_radius_, 0.5 * exterior_clearance());
    }

    const std::vector<BoundarySegment>& segments() const { return segments_; }
    double perimeter() const { return perimeter_; }
    // Concavity radius R_D: minimal radius among concave arcs.
    double concavity_radius() const { return concavity_radius_; }
    // Regular margin estimate d*: below it the nearest boundary point
    // is unique. Conservative: min(R_D, half exterior clearance).
    double regular_margin() const { return regular_margin_; }

    double reduce(double s) const {
        s = std::fmod(s, perimeter_);
        if (s < 0.0) s += perimeter_;
        return s;
    }

    BoundaryPoint eval(double s) const {
        s = reduce(s);
        const std::size_t i = segment_index(s);
        BoundaryPoint bp = segments_[i].eval(s - cum_[i]);
        bp.s = s;
        return bp;
    }

    // Point of C(d) over boundary abscissa s, with the offset curvature
    // kappa/(1 + kappa d). Requires 0 <= d < d*.
    std::pair<Vec2, double> offset_point(double s, double d) const {
        if (d >= regular_margin_)
            throw GeometryError("offset beyond regular margin");
        const BoundaryPoint bp = eval(s);
        return {bp.position - d * bp.normal,
                bp.kappa / (1.0 + bp.kappa * d)};
    }

    // Distance from r to the boundary and the abscissa of a global
    // minimizer. Throws PenetrationError if r is inside the obstacle.
    std::pair<double, double> distance(const Vec2& r) const {
        double best_d = std::numeric_limits<double>::infinity();
        double best_s = 0.0;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto [d, t] = segments_[i].closest(r);
            if (d < best_d) {
                best_d = d;
                best_s = reduce(cum_[i] + t);
            }
        }
        if (best_d > kClosureTol && boundary_poly_.contains(r))
            throw PenetrationError("point inside obstacle");
        return {best_d, best_s};
    }

    bool contains(const Vec2& r) const {
        for (const auto& seg : segments_)
            if (seg.closest(r).first <= kClosureTol) return false;
        return boundary_poly_.contains(r);
    }

    // Samples C(d) (d = 0 gives the boundary) with chordal error
    // at most `tol`. Sample abscissas are boundary abscissas.
    PolyCurve polygonize(double d, double tol = 1e-3) const {
        PolyCurve pc;
        pc.offset = d;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto& seg = segments_[i];
            double step;
            if (seg.is_arc()) {
                const double r_off =
                    std::abs(seg.radius() + (seg.ccw() ? -d : d));
                const double dphi =
                    2.0 * std::sqrt(2.0 * tol / std::max(r_off, tol));
                step = std::max(seg.radius() * dphi, tol);
            } else {
                step = seg.length() / 8.0;
            }
            const int n = std::max(4, static_cast<int>(
                                          std::ceil(seg.length() / step)));
            for (int k = 0; k < n; ++k) {
                const double t = seg.length() * k / n;
                const BoundaryPoint bp = seg.eval(t);
                pc.points.push_back(bp.position - d * bp.normal);
                pc.s.push_back(cum_[i] + t);
            }
        }
        return pc;
    }

    const PolyCurve& boundary_polyline() const { return boundary_poly_; }

  private:
    std::size_t segment_index(double s) const {
        auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        std::size_t i = static_cast<std::size_t>(it - cum_.begin());
        if (i > 0) --i;
        if (i >= segments_.size()) i = segments_.size() - 1;
        return i;
    }

    PolyCurve polygonize_boundary(double d) const {
        PolyCurve pc;
        pc.offset = d;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto& seg = segments_[i];
            const int n = seg.is_arc()
                              ? std::max(8, static_cast<int>(std::ceil(
                                                std::abs(seg.sweep()) / 0.05)))
                              : 8;
            for (int k = 0; k < n; ++k) {
                const double t = seg.length() * k / n;
                pc.points.push_back(seg.eval(t).position);
                pc.s.push_back(cum_[i] + t);
            }
        }
        return pc;
    }

    void check_self_intersection() const {
        const auto& pts = boundary_poly_.points;
        const std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a0 = pts[i], a1 = pts[(i + 1) % n];
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                const Vec2 b0 = pts[j], b1 = pts[(j + 1) % n];
                const double d1 = (a1 - a0).cross(b0 - a0);
                const double d2 = (a1 - a0).cross(b1 - a0);
                const double d3 = (b1 - b0).cross(a0 - b0);
                const double d4 = (b1 - b0).cross(a1 - b0);
                if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)))
                    throw GeometryError("boundary self-intersects");
            }
        }
    }

    // Minimal clearance between non-adjacent segments measured across
    // the exterior: a candidate pair only counts when the connecting
    // segment's midpoint lies outside the obstacle and well clear of
    // it. The margin rejects chords that merely skim along a third
    // boundary piece (for example across the mouth of a fillet).
    double exterior_clearance() const {
        const std::size_t n = segments_.size();
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::vector<BoundaryPoint>> samples(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& seg = segments_[i];
            const int m = std::max(
                8, static_cast<int>(std::ceil(seg.length() / 0.05)));
            for (int k = 0; k <= m; ++k)
                samples[i].push_back(seg.eval(seg.length() * k / m));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool adjacent =
                    (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent) continue;
                for (const auto& a : samples[i]) {
                    for (const auto& b : samples[j]) {
                        const double d = dist(a.position, b.position);
                        if (d >= best || d < 1e-12) continue;
                        const Vec2 mid = 0.5 * (a.position + b.position);
                        double md = std::numeric_limits<double>::infinity();
                        for (const auto& seg : segments_)
                            md = std::min(md, seg.closest(mid).first);
                        if (md > 0.2 * d && !boundary_poly_.contains(mid))
                            best = d;
                    }
                }
            }
        }
        return best;
    }

    std::vector<BoundarySegment> segments_;
    std::vector<double> cum_;
    double perimeter_ = 0.0;
    double concavity_radius_ = 0.0;
    double regular_margin_ = 0.0;
    PolyCurve boundary_poly_;
};

inline Obstacle build_obstacle(std::vector<BoundarySegment> segments) {
    return Obstacle(std::move(segments));
}

}  // namespace navsim
