#pragma once

#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "navsim/cave.hpp"
#include "navsim/controller.hpp"
#include "navsim/rng.hpp"
#include "navsim/scenario.hpp"
#include "navsim/vehicle.hpp"

namespace navsim {

enum class Termination { TargetReached, Timeout, Collision };

inline const char* termination_name(Termination t) {
    switch (t) {
        case Termination::TargetReached: return "target";
        case Termination::Timeout: return "timeout";
        case Termination::Collision: return "collision";
    }
    return "?";
}

struct Sample {
    double t = 0.0;
    double x = 0.0, y = 0.0, theta = 0.0;
    double u = 0.0;
    double d = 0.0;
    double beta = 0.0;
    Mode mode = Mode::Pursuit;
    SubMode submode = SubMode::None;
    int sigma = +1;
    double smec_ref = 0.0;  // wall-follow level, valid while in SMEC
};

struct SimEvent {
    double t = 0.0;
    EventType type;
    SubMode submode = SubMode::None;
    int sigma = 0;
    double d = 0.0;
    Vec2 position;
};

struct RunRecord {
    std::uint64_t seed = 0;
    double dt = 0.0;
    Termination termination = Termination::Timeout;
    double t_end = 0.0;
    double min_d = 0.0;
    double final_target_dist = 0.0;
    int switches = 0;  // A -> B count
    std::vector<Sample> series;
    std::vector<SimEvent> events;
};

// Turn direction for the deterministic policy: the walk direction
// from the previous avoidance exit footprint s_exit to the current
// entry footprint s_entry along the boundary arc of the smaller
// region cut off by the connecting segments, negated when that
// region contains the target.
inline std::optional<int> deterministic_sigma(const Obstacle& ob,
                                              const Vec2& target,
                                              const Vec2& r_exit,
                                              const Vec2& r_entry) {
    const double L = ob.perimeter();
    const auto [d_exit, s_exit] = ob.distance(r_exit);
    const auto [d_entry, s_entry] = ob.distance(r_entry);
    if (std::abs(ob.reduce(s_entry - s_exit)) < 1e-9 ||
        std::abs(ob.reduce(s_exit - s_entry)) < 1e-9)
        return std::nullopt;

    const PolyCurve& pc = ob.boundary_polyline();

    // Jordan curve for the forward walk s_exit -> s_entry: boundary
    // arc, then s_entry -> r_entry -> r_exit -> s_exit.
    auto region = [&](bool forward) {
        std::vector<Vec2> poly =
            forward ? detail::arc_points(pc, s_exit, s_entry, L)
                    : detail::arc_points(pc, s_entry, s_exit, L);
        if (forward) {
            poly.push_back(r_entry);
            poly.push_back(r_exit);
        } else {
            poly.push_back(r_exit);
            poly.push_back(r_entry);
        }
        return poly;
    };
    auto area = [](const std::vector<Vec2>& poly) {
        double a = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i)
            a += poly[i].cross(poly[(i + 1) % poly.size()]);
        return std::abs(0.5 * a);
    };
    auto contains = [](const std::vector<Vec2>& poly, const Vec2& p) {
        double total = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec2 a = poly[i] - p;
            const Vec2 b = poly[(i + 1) % poly.size()] - p;
            total += std::atan2(a.cross(b), a.dot(b));
        }
        return std::lround(total / kTwoPi) != 0;
    };

    const std::vector<Vec2> fwd = region(true);
    const std::vector<Vec2> bwd = region(false);
    const bool forward_smaller = area(fwd) <= area(bwd);
    const std::vector<Vec2>& small = forward_smaller ? fwd : bwd;
    int sigma = forward_smaller ? +1 : -1;
    if (contains(small, target)) sigma = -sigma;
    return sigma;
}

namespace detail {

inline std::size_t record_stride(double dt) {
    return static_cast<std::size_t>(
        std::max<long long>(1, std::llround(0.01 / dt)));
}

}  // namespace detail

inline RunRecord simulate_with_rng(const Scenario& sc, Rng& rng,
                                   std::uint64_t seed_tag, double dt,
                                   double t_max) {
    const VehicleParams& vp = sc.vehicle;
    const NavParams& nav = sc.nav;
    const Obstacle& ob = sc.obstacle;

    RunRecord rec;
    rec.seed = seed_tag;
    rec.dt = dt;
    rec.min_d = std::numeric_limits<double>::infinity();

    const double eps_target = std::max(2.0 * vp.v * dt, 1e-4);
    const std::size_t stride = detail::record_stride(dt);
    const long long n_steps =
        static_cast<long long>(std::ceil(t_max / dt));

    Pose pose = sc.start;
    ControllerState cs;
    cs.sigma = nav.sigma0;
    SensorReading prev;
    bool has_prev = false;
    std::optional<Vec2> last_exit;  // r at the most recent B -> A switch
    double t = 0.0;
    double last_u = 0.0;

    auto push_sample = [&](const SensorReading& sr, double d, double u) {
        rec.series.push_back({t, pose.x, pose.y, pose.theta, u, d, sr.beta,
                              cs.mode, cs.submode, cs.sigma, cs.smec_d});
    };

    for (long long step = 0; step <= n_steps; ++step) {
        SensorReading sr;
        GeomContext gc;
        try {
            const auto [d, s] = ob.distance(pose.position());
            sr = sense(pose, d, sc.target, nav, has_prev ? &prev : nullptr);
            gc = make_geom_context(ob, pose, vp.v, d, s);
        } catch (const PenetrationError&) {
            rec.termination = Termination::Collision;
            rec.t_end = t;
            rec.final_target_dist = dist(pose.position(), sc.target);
            return rec;
        }
        rec.min_d = std::min(rec.min_d, gc.d);

        if (sr.h <= eps_target) {
            rec.termination = Termination::TargetReached;
            push_sample(sr, gc.d, last_u);
            break;
        }

        if (avoid_entry_pending(cs, sr, nav)) {
            std::optional<int> det;
            if (nav.policy == Policy::Deterministic && last_exit)
                det = deterministic_sigma(ob, sc.target, *last_exit,
                                          pose.position());
            cs.sigma = sigma_update(nav.policy, cs.sigma, nav.p, rng, det);
            rec.events.push_back({t, EventType::SigmaUpdate, SubMode::None,
                                  cs.sigma, gc.d, pose.position()});
        }

        ControlOutput out = control_step(cs, sr, gc, nav, vp, dt);
        for (const auto& ev : out.events) {
            rec.events.push_back(
                {t, ev.type, ev.submode, ev.sigma, gc.d, pose.position()});
            if (ev.type == EventType::EnterAvoid) rec.switches += 1;
            if (ev.type == EventType::ExitAvoid)
                last_exit = pose.position();
        }
        cs = out.state;

        if (step % stride == 0) push_sample(sr, gc.d, out.u);

        pose = integrate_step(pose, out.u, dt, vp);
        last_u = out.u;
        prev = sr;
        has_prev = true;
        t += dt;
    }

    if (rec.termination != Termination::TargetReached)
        rec.termination = Termination::Timeout;
    rec.t_end = t;
    rec.final_target_dist = dist(pose.position(), sc.target);
    return rec;
}

inline RunRecord run_simulation(const Scenario& sc, std::uint64_t seed,
                                double dt, double t_max) {
    Rng rng = Rng::for_run(seed, 0);
    return simulate_with_rng(sc, rng, seed, dt, t_max);
}

// Exact-curvature reduced model in the boundary frame of the nearest
// point: s along the boundary, d the distance, alpha the heading
// relative to the local tangent.
struct ReducedState {
    double s = 0.0;
    double d = 0.0;
    double alpha = 0.0;
};

inline ReducedState reduced_derivative(const Obstacle& ob,
                                       const ReducedState& st, double u,
                                       double v) {
    const double kappa = ob.eval(st.s).kappa;
    ReducedState dv;
    dv.s = v * std::cos(st.alpha) / (1.0 + kappa * st.d);
    dv.d = -v * std::sin(st.alpha);
    dv.alpha = -kappa * dv.s + u;
    return dv;
}

inline ReducedState reduced_rk4_step(const Obstacle& ob,
                                     const ReducedState& st, double u,
                                     double v, double dt) {
    auto add = [](const ReducedState& a, const ReducedState& b, double h) {
        return ReducedState{a.s + h * b.s, a.d + h * b.d,
                            a.alpha + h * b.alpha};
    };
    const ReducedState k1 = reduced_derivative(ob, st, u, v);
    const ReducedState k2 = reduced_derivative(ob, add(st, k1, dt / 2), u, v);
    const ReducedState k3 = reduced_derivative(ob, add(st, k2, dt / 2), u, v);
    const ReducedState k4 = reduced_derivative(ob, add(st, k3, dt), u, v);
    ReducedState out = st;
    out.s += dt / 6.0 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
    out.d += dt / 6.0 * (k1.d + 2 * k2.d + 2 * k3.d + k4.d);
    out.alpha += dt / 6.0 * (k1.alpha + 2 * k2.alpha + 2 * k3.alpha + k4.alpha);
    return out;
}

struct McRun {
    std::uint64_t run_index = 0;
    Termination termination = Termination::Timeout;
    double t_end = 0.0;
    double min_d = 0.0;
    int switches = 0;
};

struct McResult {
    int n = 0;
    int reached = 0;
    double mean_time = 0.0;   // over reached runs
    double max_time = 0.0;
    double min_clearance = 0.0;
    int max_switches = 0;
    std::vector<McRun> runs;  // ordered by run index
};

// Runs n independent simulations; the per-run stream depends only on
// (master seed, run index), so the result is identical regardless of
// thread count.
inline McResult monte_carlo(const Scenario& sc, int n,
                            std::uint64_t master_seed, double dt,
                            double t_max, int threads = 0) {
    McResult res;
    res.n = n;
    res.runs.resize(n);
    res.min_clearance = std::numeric_limits<double>::infinity();

    if (threads <= 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, std::max(1, n));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            Rng rng = Rng::for_run(master_seed, i);
            RunRecord rec = simulate_with_rng(sc, rng, master_seed, dt,
                                              t_max);
            res.runs[i] = {static_cast<std::uint64_t>(i), rec.termination,
                           rec.t_end, rec.min_d, rec.switches};
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    double time_sum = 0.0;
    for (const auto& run : res.runs) {
        if (run.termination == Termination::TargetReached) {
            res.reached += 1;
            time_sum += run.t_end;
            res.max_time = std::max(res.max_time, run.t_end);
        }
        res.min_clearance = std::min(res.min_clearance, run.min_d);
        res.max_switches = std::max(res.max_switches, run.switches);
    }
    if (res.reached > 0) res.mean_time = time_sum / res.reached;
    return res;
}

}  // namespace navsim
