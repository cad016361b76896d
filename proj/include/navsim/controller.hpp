#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "navsim/obstacle.hpp"
#include "navsim/rng.hpp"
#include "navsim/vec2.hpp"
#include "navsim/vehicle.hpp"

namespace navsim {

enum class Policy { Basic, Randomized, Deterministic };

enum class Mode { Pursuit, Avoid };  // A / B of the switching law

enum class SubMode {
    None,
    InitialTurn,  // IT: constant turn away, u = -sigma*u_max
    WallFollow,   // SMEC: sliding along an equidistant curve
    TargetSlide,  // SMT: sliding on the bearing surface beta = 0
    Bang,         // fallback turn inside avoidance (should not occur)
};

inline const char* submode_name(SubMode m) {
    switch (m) {
        case SubMode::InitialTurn: return "IT";
        case SubMode::WallFollow: return "SMEC";
        case SubMode::TargetSlide: return "SMT";
        case SubMode::Bang: return "BANG";
        default: return "-";
    }
}

struct NavParams {
    double d_safe = 0.0;
    double d_trig = 0.0;
    double d_range = 0.0;
    double p = 0.5;     // probability of sigma = + (randomized policy)
    int sigma0 = +1;
    Policy policy = Policy::Basic;

    // Regularization constants of the discrete sliding realization.
    double eps_beta = 1e-3;   // rad, bearing boundary layer
    double eps_slide = 1e-3;  // fraction of v, d-dot boundary layer
};

struct SensorReading {
    std::optional<double> d;  // absent when the obstacle is out of range
    int d_dot_sign = 0;       // sign of the sampled distance change
    double beta = 0.0;        // bearing, unwrapped (accumulates turns)
    double h = 0.0;           // distance to target (arrival detection)
};

// Unwrapped bearing plus range-gated distance. d_dot_sign uses a
// 1e-9 m deadband on the sampled difference.
inline SensorReading sense(const Pose& pose, double d, const Vec2& target,
                           const NavParams& nav, const SensorReading* prev) {
    SensorReading sr;
    if (d <= nav.d_range) sr.d = d;
    sr.h = dist(pose.position(), target);
    const double beta_raw = wrap_angle((target - pose.position()).angle() -
                                       pose.theta);
    if (prev) {
        sr.beta = unwrap_towards(prev->beta, beta_raw);
        if (prev->d && sr.d) {
            const double delta = *sr.d - *prev->d;
            sr.d_dot_sign = std::abs(delta) < 1e-9 ? 0 : sgn(delta);
        }
    } else {
        sr.beta = beta_raw;
    }
    return sr;
}

inline SensorReading sense(const Pose& pose, const Obstacle& obstacle,
                           const Vec2& target, const NavParams& nav,
                           const SensorReading* prev) {
    const auto [d, s] = obstacle.distance(pose.position());  // may throw
    return sense(pose, d, target, nav, prev);
}

// Quantities the avoidance automaton reads from the nearest boundary
// point: alpha is the velocity polar angle in the boundary Frenet
// frame, so d_dot = -v sin(alpha) and s_dot = v cos(alpha)/(1+kd).
struct GeomContext {
    double d = 0.0;
    double s = 0.0;
    double kappa = 0.0;
    double kappa_ahead_pos = 0.0;  // kappa(s + lookahead)
    double kappa_ahead_neg = 0.0;  // kappa(s - lookahead)
    double alpha = 0.0;            // wrapped to (-pi, pi]
    double d_dot = 0.0;
    double s_dot = 0.0;
};

inline GeomContext make_geom_context(const Obstacle& obstacle,
                                     const Pose& pose, double v, double d,
                                     double s) {
    GeomContext gc;
    gc.d = d;
    gc.s = s;
    const BoundaryPoint bp = obstacle.eval(s);
    gc.kappa = bp.kappa;
    const double lookahead = 1e-6 * obstacle.perimeter();
    gc.kappa_ahead_pos = obstacle.eval(s + lookahead).kappa;
    gc.kappa_ahead_neg = obstacle.eval(s - lookahead).kappa;
    gc.alpha = wrap_angle(pose.theta - bp.tangent.angle());
    gc.d_dot = -v * std::sin(gc.alpha);
    gc.s_dot = v * std::cos(gc.alpha) / (1.0 + gc.kappa * gc.d);
    return gc;
}

inline GeomContext make_geom_context(const Obstacle& obstacle,
                                     const Pose& pose, double v) {
    const auto [d, s] = obstacle.distance(pose.position());
    return make_geom_context(obstacle, pose, v, d, s);
}

struct ControllerState {
    Mode mode = Mode::Pursuit;
    SubMode submode = SubMode::None;
    int sigma = +1;
    double smec_d = 0.0;           // distance locked at SMEC start
    double trig_excess = 0.0;      // sampling overshoot past d_trig at entry
    double alpha_bar_prev = 0.0;   // IT capture crossing detector
    double beta_prev = 0.0;
    bool has_prev = false;
};

enum class EventType {
    EnterAvoid,    // A -> B
    ExitAvoid,     // B -> A
    SigmaUpdate,
    SubModeChange,
};

struct ControlEvent {
    EventType type;
    SubMode submode = SubMode::None;  // for SubModeChange
    int sigma = 0;                    // for SigmaUpdate
};

struct ControlOutput {
    double u = 0.0;
    ControllerState state;
    std::vector<ControlEvent> events;
};

// True when the next control step will switch A -> B, i.e. the caller
// must run the sigma policy first and write the result into sigma.
inline bool avoid_entry_pending(const ControllerState& cs,
                                const SensorReading& sr,
                                const NavParams& nav) {
    return cs.mode == Mode::Pursuit && sr.d && *sr.d <= nav.d_trig;
}

namespace detail {

// Saturated one-step-ahead pursuit: equals u_max*sgn(beta) outside a
// u_max*dt layer and captures the beta = 0 surface inside it.
inline double pursuit_control(double beta, double h, double v, double u_max,
                              double dt) {
    const double feedforward = h > 1e-9 ? v * std::sin(beta) / h : 0.0;
    return clamp(beta / dt + feedforward, -u_max, u_max);
}

// Attractivity of the d-dot = 0 surface per the switching-law
// second-derivative signs: always true for kappa >= 0, and requires
// R_kappa > d + R on concavities.
inline bool smec_attractive(double kappa, double d, double R) {
    if (kappa >= 0.0) return true;
    return 1.0 / std::abs(kappa) > d + R;
}

}  // namespace detail

inline double smec_control(const ControllerState& st, const GeomContext& gc,
                           double alpha_bar, double v, double u_max,
                           double dt);

// One controller update. The caller must have applied the sigma
// policy when avoid_entry_pending() was true for this reading.
inline ControlOutput control_step(const ControllerState& cs,
                                  const SensorReading& sr,
                                  const GeomContext& gc,
                                  const NavParams& nav,
                                  const VehicleParams& vp, double dt) {
    ControlOutput out;
    ControllerState& st = out.state;
    st = cs;

    const double v = vp.v;
    const double u_max = vp.u_max;
    const double R = vp.min_turn_radius();
    const double slide_band = nav.eps_slide * v;
    const double exit_level = nav.d_trig + 1e-3 * R;  // hysteresis band

    // Mode A works with the unwrapped bearing; the avoidance submodes
    // use the wrapped one so that sliding-surface crossings are seen
    // again on every circuit of the boundary.
    const double beta_w = wrap_angle(sr.beta);
    const double alpha_bar =
        st.sigma > 0 ? wrap_angle(gc.alpha) : wrap_angle(gc.alpha - kPi);
    const double kappa_ahead =
        st.sigma > 0 ? gc.kappa_ahead_pos : gc.kappa_ahead_neg;

    auto set_submode = [&](SubMode m) {
        if (st.submode != m) {
            st.submode = m;
            out.events.push_back({EventType::SubModeChange, m, 0});
        }
    };

    const bool in_range = sr.d.has_value();
    const bool far = !in_range || *sr.d > nav.d_trig;
    const bool beyond_exit = !in_range || *sr.d >= exit_level;

    if (cs.mode == Mode::Pursuit) {
        if (!far) {
            // A -> B. Sigma was already refreshed by the policy.
            st.mode = Mode::Avoid;
            out.events.push_back({EventType::EnterAvoid});
            // The trigger is sampled, so entry lies up to one step past
            // the d_trig level; remembering the overshoot lets the wall
            // follower anchor on the level an exact trigger would give.
            st.trig_excess = std::max(0.0, nav.d_trig - *sr.d);
            // Zero-duration IT: already moving tangentially in the
            // sigma direction, so sliding starts at once.
            if (std::abs(gc.d_dot) <= slide_band &&
                st.sigma * sgn(std::cos(gc.alpha)) > 0) {
                if (kappa_ahead < 0.0 &&
                    detail::smec_attractive(kappa_ahead, gc.d, R)) {
                    st.smec_d = gc.d + st.trig_excess;
                    set_submode(SubMode::WallFollow);
                } else {
                    set_submode(SubMode::TargetSlide);
                }
            } else {
                set_submode(SubMode::InitialTurn);
            }
        } else {
            set_submode(std::abs(sr.beta) <= nav.eps_beta
                            ? SubMode::TargetSlide
                            : SubMode::None);
            out.u = detail::pursuit_control(sr.beta, sr.h, v, u_max, dt);
            st.alpha_bar_prev = alpha_bar;
            st.beta_prev = beta_w;
            st.has_prev = true;
            return out;
        }
    }

    // Mode B.
    if (beyond_exit) {
        st.mode = Mode::Pursuit;
        out.events.push_back({EventType::ExitAvoid});
        set_submode(std::abs(sr.beta) <= nav.eps_beta ? SubMode::TargetSlide
                                                      : SubMode::None);
        out.u = detail::pursuit_control(sr.beta, sr.h, v, u_max, dt);
        st.alpha_bar_prev = alpha_bar;
        st.beta_prev = beta_w;
        st.has_prev = true;
        return out;
    }

    switch (st.submode) {
        case SubMode::InitialTurn:
        case SubMode::Bang: {
            // Capture test: alpha crosses the sigma-aligned tangent
            // direction, i.e. d_dot hits zero with sigma*s_dot > 0.
            const bool crossing =
                st.has_prev &&
                sgn(alpha_bar) * sgn(st.alpha_bar_prev) <= 0 &&
                std::abs(alpha_bar - st.alpha_bar_prev) < kPi / 2.0;
            if (crossing || std::abs(alpha_bar) < 1e-12) {
                if (kappa_ahead >= 0.0 && std::abs(beta_w) <= nav.eps_beta) {
                    set_submode(SubMode::TargetSlide);
                    out.u = detail::pursuit_control(beta_w, sr.h, v, u_max,
                                                    dt);
                } else if (detail::smec_attractive(gc.kappa, gc.d, R)) {
                    st.smec_d = gc.d + st.trig_excess;
                    set_submode(SubMode::WallFollow);
                    out.u = smec_control(st, gc, alpha_bar, v, u_max, dt);
                } else {
                    out.u = -st.sigma * u_max;
                }
            } else {
                out.u = -st.sigma * u_max;
            }
            break;
        }
        case SubMode::WallFollow: {
            // Exit to SMT at a bearing zero crossing, unless the
            // boundary just ahead is concave. Crossings through the
            // antipode (target dead astern) do not count.
            const bool beta_crossing =
                (st.has_prev && sgn(beta_w) * sgn(st.beta_prev) < 0 &&
                 std::abs(beta_w) < kPi / 2.0) ||
                std::abs(beta_w) < 1e-12;
            if (beta_crossing && kappa_ahead >= 0.0) {
                set_submode(SubMode::TargetSlide);
                out.u = detail::pursuit_control(beta_w, sr.h, v, u_max, dt);
            } else {
                out.u = smec_control(st, gc, alpha_bar, v, u_max, dt);
            }
            break;
        }
        case SubMode::TargetSlide: {
            if (gc.d_dot <= slide_band && kappa_ahead < 0.0 &&
                detail::smec_attractive(kappa_ahead, gc.d, R)) {
                st.smec_d = gc.d;
                set_submode(SubMode::WallFollow);
                out.u = smec_control(st, gc, alpha_bar, v, u_max, dt);
            } else if (gc.d_dot < -10.0 * slide_band &&
                       (std::abs(beta_w) > nav.eps_beta ||
                        gc.d < 0.5 * (nav.d_safe + nav.d_trig))) {
                // Approaching again without an SMEC surface: turn away.
                set_submode(SubMode::Bang);
                out.u = -st.sigma * u_max;
            } else {
                out.u = detail::pursuit_control(beta_w, sr.h, v, u_max, dt);
            }
            break;
        }
        default: {
            // Entered B this step with d_dot < 0: initial turn.
            set_submode(SubMode::InitialTurn);
            out.u = -st.sigma * u_max;
            break;
        }
    }

    st.alpha_bar_prev = alpha_bar;
    st.beta_prev = beta_w;
    st.has_prev = true;
    return out;
}

// Equivalent control on the equidistant curve plus a small boundary
// layer regulating (d - smec_d, alpha) back to the surface.
inline double smec_control(const ControllerState& st, const GeomContext& gc,
                           double alpha_bar, double v, double u_max,
                           double dt) {
    const double tau_d = 10.0 * dt;
    const double tau_a = 2.0 * dt;
    const double e = gc.d - st.smec_d;
    const double alpha_des =
        st.sigma * std::asin(clamp(e / (v * tau_d), -0.3, 0.3));
    const double u_eq = gc.kappa * gc.s_dot;
    return clamp(u_eq + (alpha_des - alpha_bar) / tau_a, -u_max, u_max);
}

// Turn-direction policies, invoked exactly at A -> B switches. The
// deterministic variant needs the cave from the preceding pursuit
// episode and is evaluated by the harness (it owns the geometry); it
// passes the result through `deterministic_sigma`.
inline int sigma_update(Policy policy, int current_sigma, double p, Rng& rng,
                        std::optional<int> deterministic_sigma) {
    switch (policy) {
        case Policy::Basic:
            return current_sigma;
        case Policy::Randomized:
            return rng.bernoulli(p) ? +1 : -1;
        case Policy::Deterministic:
            return deterministic_sigma.value_or(current_sigma);
    }
    return current_sigma;
}

}  // namespace navsim
