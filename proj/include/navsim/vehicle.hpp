#pragma once

#include <cmath>
#include <stdexcept>

#include "navsim/vec2.hpp"

namespace navsim {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // unbounded, continuous

    Vec2 position() const { return {x, y}; }
};

struct VehicleParams {
    double v = 1.0;      // cruise speed, m/s
    double u_max = 1.0;  // angular rate bound, rad/s

    VehicleParams() = default;
    VehicleParams(double v_, double u_max_) : v(v_), u_max(u_max_) {
        if (!(v > 0.0) || !(u_max > 0.0))
            throw std::invalid_argument("v and u_max must be positive");
    }

    // Minimal turning radius R = v / u_max.
    double min_turn_radius() const { return v / u_max; }
};

inline double min_turn_radius(const VehicleParams& p) {
    return p.min_turn_radius();
}

struct ControlSaturationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form unicycle step under constant u: a straight move for
// u ~ 0, otherwise an exact circular arc of radius v/|u|.
inline Pose integrate_step(const Pose& p, double u, double dt,
                           const VehicleParams& params) {
    if (std::abs(u) > params.u_max + 1e-12)
        throw ControlSaturationError("|u| exceeds u_max");
    // Chord form of the arc: displacement v*dt*sinc(u*dt/2) along the
    // mid-step heading. Stable for arbitrarily small |u|, where the
    // radius form r*(sin - sin) cancels catastrophically.
    const double half = 0.5 * u * dt;
    const double sinc =
        std::abs(half) < 1e-6 ? 1.0 - half * half / 6.0
                              : std::sin(half) / half;
    const double chord = params.v * dt * sinc;
    Pose q;
    q.theta = p.theta + u * dt;
    q.x = p.x + chord * std::cos(p.theta + half);
    q.y = p.y + chord * std::sin(p.theta + half);
    return q;
}

}  // namespace navsim
