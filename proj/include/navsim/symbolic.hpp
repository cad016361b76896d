#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "navsim/cave.hpp"
#include "navsim/obstacle.hpp"
#include "navsim/singular.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

// SMT count bound of a single path through a domain with P concave
// components and Q components of the zeta zero set.
inline int smt_upper_bound(int P, int Q) { return (P + 1) * (Q + 2); }

// Overall cap used to declare non-termination of the abstract point.
inline int smt_cap(const DomainStats& st) {
    return 2 * smt_upper_bound(st.P, st.Q) + st.K;
}

enum class SymPhase { Straight, Follow };

struct SymSample {
    double tau = 0.0;  // cumulative path length
    Vec2 position;
    double heading = 0.0;
    double beta = 0.0;  // unwrapped
    SymPhase phase = SymPhase::Straight;
    int sigma = 0;
};

struct FollowInterval {
    double s_hit = 0.0;
    double s_leave = 0.0;
    int sigma = 0;
    double beta_min = 0.0;
    double beta_max = 0.0;
};

struct SymbolicTrace {
    bool reached = false;
    int smt_count = 0;
    int cap = 0;
    std::vector<SymSample> samples;
    std::vector<FollowInterval> follows;
};

namespace detail {

// First intersection of the segment p -> q with the boundary, as
// (parameter t along the segment, boundary abscissa). Exact per
// segment kind.
inline std::optional<std::pair<double, double>> first_boundary_hit(
    const Obstacle& ob, const Vec2& p, const Vec2& q, double t_min) {
    const Vec2 e = q - p;
    const double elen = e.norm();
    if (!(elen > 0.0)) return std::nullopt;
    for (int attempt = 0; attempt < 64; ++attempt) {
    double best_t = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    double cum = 0.0;
    for (const auto& seg : ob.segments()) {
        if (!seg.is_arc()) {
            const Vec2 a = seg.start();
            const Vec2 b = seg.end();
            const Vec2 f = b - a;
            const double denom = e.cross(f);
            if (std::abs(denom) > 1e-14 * elen * f.norm()) {
                const Vec2 w = a - p;
                const double t = w.cross(f) / denom;
                const double u = w.cross(e) / denom;
                if (t >= t_min && t < best_t && u >= -1e-12 &&
                    u <= 1.0 + 1e-12) {
                    best_t = t;
                    best_s = cum + clamp(u, 0.0, 1.0) * seg.length();
                }
            }
        } else {
            const Vec2 c = seg.center();
            const double R = seg.radius();
            const Vec2 w = p - c;
            const double A = e.dot(e);
            const double B = 2.0 * w.dot(e);
            const double C = w.dot(w) - R * R;
            const double disc = B * B - 4.0 * A * C;
            if (disc >= 0.0) {
                const double root = std::sqrt(disc);
                for (const double t : {(-B - root) / (2.0 * A),
                                       (-B + root) / (2.0 * A)}) {
                    if (t < t_min || t >= best_t) continue;
                    const Vec2 hit = p + e * t;
                    double rel = (hit - c).angle() - seg.start_angle();
                    if (seg.ccw()) {
                        while (rel < 0.0) rel += kTwoPi;
                    } else {
                        while (rel > 0.0) rel -= kTwoPi;
                    }
                    if (std::abs(rel) <= std::abs(seg.sweep()) + 1e-12) {
                        best_t = t;
                        best_s = cum + R * std::abs(rel);
                    }
                }
            }
        }
        cum += seg.length();
    }
    if (!std::isfinite(best_t) || best_t > 1.0 + 1e-12) return std::nullopt;
    // Keep only genuine entries: the segment must run against the
    // inward normal transversally, which rejects tangential grazes and
    // exit-side crossings in one test.
    if (e.dot(ob.eval(best_s).normal) <= 1e-7 * elen) {
        t_min = best_t + 1e-9;
        if (t_min > 1.0) return std::nullopt;
        continue;
    }
    return std::make_pair(std::min(best_t, 1.0), ob.reduce(best_s));
    }
    return std::nullopt;
}

// A straight move toward the target is admissible at boundary point s
// when the initial part stays out of the domain interior.
inline bool smt_possible(const Obstacle& ob, double s, const Vec2& target) {
    const double L = ob.perimeter();
    const BoundaryPoint bp = ob.eval(s);
    const Vec2 dir = (target - bp.position).normalized();
    // Curving away from the tangent line means immediate departure.
    // The tangent at a bearing zero points at the target, so a look
    // ahead of the curvature decides.
    const double ahead = ob.eval(s + 1e-6 * L * sgn(dir.dot(bp.tangent)))
                             .kappa;
    if (ahead > 1e-9) return true;
    if (ahead < -1e-9) return false;
    const Vec2 probe = bp.position + dir * (1e-4 * L);
    return !ob.contains(probe);
}

}  // namespace detail

// Direction (+1 along increasing abscissa) that walks into the cave
// cut by the chord between s_from and s_to, starting at s_to.
inline int into_cave_direction(const Cave& cave, const Obstacle& ob,
                               double s_at) {
    const double L = ob.perimeter();
    const double arc_start =
        cave.arc_forward ? cave.s_minus : cave.s_plus;
    const double gap = std::min(ob.reduce(s_at - arc_start),
                                ob.reduce(arc_start - s_at));
    return gap < 1e-6 * L ? +1 : -1;
}

// The abstract navigation point: straight runs at the target
// alternating with monotone boundary following, turn directions per
// the cave rule, halting at the target or at the SMT cap.
inline SymbolicTrace symbolic_path(const Obstacle& dom, const Vec2& start,
                                   const Vec2& target, int first_turn,
                                   int samples_per_loop = 20000) {
    if (dom.contains(target))
        throw GeometryError("target inside the domain");
    if (dom.contains(start))
        throw GeometryError("start inside the domain");

    const double L = dom.perimeter();
    const DomainStats stats =
        domain_stats(dom, target, 0.5 * dom.distance(target).first);
    SymbolicTrace trace;
    trace.cap = smt_cap(stats);

    Vec2 r = start;
    double tau = 0.0;
    int sigma = 0;
    std::optional<double> s_prev_leave;

    auto push = [&](const Vec2& p, double heading, double beta,
                    SymPhase phase) {
        trace.samples.push_back({tau, p, heading, beta, phase, sigma});
    };

    while (trace.smt_count <= trace.cap) {
        // Straight run toward the target.
        trace.smt_count += 1;
        const Vec2 dir = (target - r).normalized();
        const double heading = dir.angle();
        const auto hit =
            detail::first_boundary_hit(dom, r, target, 1e-9);
        const Vec2 stop = hit ? r + (target - r) * hit->first : target;
        const int leg_samples = 32;
        for (int k = 0; k <= leg_samples; ++k) {
            const Vec2 p = r + (stop - r) * (double(k) / leg_samples);
            push(p, heading, 0.0, SymPhase::Straight);
            if (k < leg_samples)
                tau += dist(r, stop) / leg_samples;
        }
        if (!hit) {
            trace.reached = true;
            return trace;
        }
        r = stop;
        const double s_hit = hit->second;

        // Turn direction: pre-specified for the first landing, cave
        // rule afterwards.
        if (!s_prev_leave) {
            sigma = first_turn >= 0 ? +1 : -1;
        } else {
            try {
                const Cave cave = cave_between(dom, 0.0, *s_prev_leave,
                                               s_hit, target);
                const int inward = into_cave_direction(cave, dom, s_hit);
                sigma = cave.contains_target ? inward : -inward;
            } catch (const GeometryError&) {
                // Degenerate chord: keep the current direction.
            }
        }

        // Monotone boundary following, tracking the unwrapped bearing
        // between the travel tangent and the target direction.
        const double ds = L / samples_per_loop;
        double s = s_hit;
        const BoundaryPoint bp0 = dom.eval(s);
        auto beta_raw = [&](double sv) {
            const BoundaryPoint bp = dom.eval(sv);
            return (target - bp.position).angle() -
                   (sigma > 0 ? bp.tangent : -bp.tangent).angle();
        };
        double beta = wrap_angle(beta_raw(s));
        FollowInterval fi;
        fi.s_hit = dom.reduce(s_hit);
        fi.sigma = sigma;
        fi.beta_min = fi.beta_max = beta;
        push(bp0.position, (sigma > 0 ? bp0.tangent : -bp0.tangent).angle(),
             beta, SymPhase::Follow);

        bool left = false;
        const long long max_steps = 5 * samples_per_loop;
        for (long long k = 1; k <= max_steps; ++k) {
            const double s_next = s + sigma * ds;
            const double beta_next =
                unwrap_towards(beta, wrap_angle(beta_raw(s_next)));
            if (sgn(beta_next) * sgn(beta) < 0 ||
                std::abs(beta_next) < 1e-15) {
                // Refine the bearing zero and test departure.
                double a = s, b = s_next;
                double fa = beta;
                for (int it = 0; it < 60; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm =
                        unwrap_towards(fa, wrap_angle(beta_raw(m)));
                    if ((fa < 0.0) == (fm < 0.0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                const double s_zero = 0.5 * (a + b);
                if (detail::smt_possible(dom, s_zero, target)) {
                    const BoundaryPoint bp = dom.eval(s_zero);
                    tau += std::abs(
                        k == 1 ? sigma * (s_zero - s) : ds);
                    push(bp.position, (target - bp.position).angle(), 0.0,
                         SymPhase::Follow);
                    fi.s_leave = dom.reduce(s_zero);
                    trace.follows.push_back(fi);
                    s_prev_leave = fi.s_leave;
                    r = bp.position;
                    left = true;
                    break;
                }
            }
            s = s_next;
            beta = beta_next;
            fi.beta_min = std::min(fi.beta_min, beta);
            fi.beta_max = std::max(fi.beta_max, beta);
            tau += ds;
            if (k % 64 == 0) {
                const BoundaryPoint bp = dom.eval(s);
                push(bp.position,
                     (sigma > 0 ? bp.tangent : -bp.tangent).angle(), beta,
                     SymPhase::Follow);
            }
        }
        if (!left) return trace;  // no departure found: not terminated
    }
    trace.smt_count = trace.cap + 1;
    return trace;
}

// Residual of the turning identity along a recorded path between two
// indices: the unwrapped bearing change minus the boundary-frame
// turning plus the normal-segment and matching-angle corrections.
// Near zero (mod the sampling error) whenever the enclosed loop does
// not encircle the target.
struct PathPoint {
    Vec2 position;
    double heading = 0.0;
};

inline double turning_identity_residual(const std::vector<PathPoint>& path,
                                        const Obstacle& ob,
                                        const Vec2& target, int sigma,
                                        int boundary_samples = 20000) {
    if (path.size() < 2)
        throw GeometryError("path too short for the turning identity");

    // Left side: turning of the target vector in the path frame.
    double lhs = 0.0;
    double prev = wrap_angle((target - path.front().position).angle() -
                             path.front().heading);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double cur = unwrap_towards(
            prev, wrap_angle((target - path[i].position).angle() -
                             path[i].heading));
        lhs += cur - prev;
        prev = cur;
    }

    const auto [d1, s1] = ob.distance(path.front().position);
    const auto [d2, s2] = ob.distance(path.back().position);

    // Boundary-frame turning from s1 to s2 walked in direction sigma.
    const double span =
        sigma > 0 ? ob.reduce(s2 - s1) : ob.reduce(s1 - s2);
    double rhs = 0.0;
    {
        auto frame_angle = [&](double s) {
            const BoundaryPoint bp = ob.eval(s);
            const Vec2 tangent = sigma > 0 ? bp.tangent : -bp.tangent;
            return wrap_angle((target - bp.position).angle() -
                              tangent.angle());
        };
        double acc = frame_angle(s1);
        for (int k = 1; k <= boundary_samples; ++k) {
            const double s = s1 + sigma * span * k / boundary_samples;
            const double cur = unwrap_towards(acc, frame_angle(s));
            rhs += cur - acc;
            acc = cur;
        }
    }

    // Turning about the target along the normals [r_i, s_i].
    auto normal_turn = [&](const Vec2& from, double s_to) {
        const Vec2 to = ob.eval(s_to).position;
        double acc = 0.0;
        double prev_a = (target - from).angle();
        const int n = 256;
        for (int k = 1; k <= n; ++k) {
            const Vec2 p = from + (to - from) * (double(k) / n);
            const double cur = unwrap_towards(
                prev_a, wrap_angle((target - p).angle()));
            acc += cur - prev_a;
            prev_a = cur;
        }
        return acc;
    };
    rhs += normal_turn(path.front().position, s1);
    rhs -= normal_turn(path.back().position, s2);

    // Matching angles between the boundary tangent and the path
    // heading at the endpoints.
    auto match = [&](double s, double heading) {
        const BoundaryPoint bp = ob.eval(s);
        const Vec2 tangent = sigma > 0 ? bp.tangent : -bp.tangent;
        return wrap_angle(heading - tangent.angle());
    };
    rhs += match(s1, path.front().heading);
    rhs -= match(s2, path.back().heading);

    return lhs - rhs;
}

}  // namespace navsim
