#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "navsim/cave.hpp"
#include "navsim/controller.hpp"
#include "navsim/obstacle.hpp"
#include "navsim/vehicle.hpp"

namespace navsim {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name;
    VehicleParams vehicle;
    NavParams nav;
    Vec2 target;
    Pose start;
    Obstacle obstacle;
};

namespace detail {

inline Vec2 vec_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ScenarioError("expected a 2-element array point");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Policy policy_from_string(const std::string& s) {
    if (s == "basic") return Policy::Basic;
    if (s == "randomized") return Policy::Randomized;
    if (s == "deterministic") return Policy::Deterministic;
    throw ScenarioError("unknown policy: " + s);
}

inline std::string policy_to_string(Policy p) {
    switch (p) {
        case Policy::Basic: return "basic";
        case Policy::Randomized: return "randomized";
        case Policy::Deterministic: return "deterministic";
    }
    return "basic";
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
    try {
        const std::string name = j.value("name", "unnamed");

        const auto& veh = j.at("vehicle");
        const VehicleParams vehicle(veh.at("v").get<double>(),
                                    veh.at("u_max").get<double>());

        NavParams nav;
        const auto& jn = j.at("nav");
        nav.d_safe = jn.at("d_safe").get<double>();
        nav.d_trig = jn.at("d_trig").get<double>();
        nav.d_range = jn.at("d_range").get<double>();
        nav.p = jn.value("p", 0.5);
        nav.sigma0 = jn.value("sigma0", +1);
        nav.policy = detail::policy_from_string(jn.value("policy", "basic"));

        const Vec2 target = detail::vec_from_json(j.at("target"));

        Pose start;
        const auto& st = j.at("start");
        start.x = st.at("x").get<double>();
        start.y = st.at("y").get<double>();
        start.theta = st.at("theta").get<double>();

        std::vector<BoundarySegment> segs;
        for (const auto& js : j.at("obstacle")) {
            const std::string kind = js.at("kind").get<std::string>();
            if (kind == "line") {
                segs.push_back(BoundarySegment::line(
                    detail::vec_from_json(js.at("from")),
                    detail::vec_from_json(js.at("to"))));
            } else if (kind == "arc") {
                segs.push_back(BoundarySegment::arc(
                    detail::vec_from_json(js.at("center")),
                    js.at("radius").get<double>(),
                    js.at("from_angle").get<double>(),
                    js.at("to_angle").get<double>(),
                    js.at("ccw").get<bool>()));
            } else {
                throw ScenarioError("unknown segment kind: " + kind);
            }
        }
        return Scenario{name, vehicle, nav, target, start,
                        build_obstacle(std::move(segs))};
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
}

inline nlohmann::json scenario_to_json(const Scenario& sc) {
    nlohmann::json j;
    j["name"] = sc.name;
    j["vehicle"] = {{"v", sc.vehicle.v}, {"u_max", sc.vehicle.u_max}};
    j["nav"] = {{"d_safe", sc.nav.d_safe},
                {"d_trig", sc.nav.d_trig},
                {"d_range", sc.nav.d_range},
                {"p", sc.nav.p},
                {"sigma0", sc.nav.sigma0},
                {"policy", detail::policy_to_string(sc.nav.policy)}};
    j["target"] = {sc.target.x, sc.target.y};
    j["start"] = {{"x", sc.start.x},
                  {"y", sc.start.y},
                  {"theta", sc.start.theta}};
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& seg : sc.obstacle.segments()) {
        if (seg.is_arc()) {
            segs.push_back({{"kind", "arc"},
                            {"center", {seg.center().x, seg.center().y}},
                            {"radius", seg.radius()},
                            {"from_angle", seg.start_angle()},
                            {"to_angle", seg.start_angle() + seg.sweep()},
                            {"ccw", seg.ccw()}});
        } else {
            segs.push_back({{"kind", "line"},
                            {"from", {seg.start().x, seg.start().y}},
                            {"to", {seg.end().x, seg.end().y}}});
        }
    }
    j["obstacle"] = segs;
    return j;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
    return scenario_from_json(j);
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError("cannot write scenario file: " + path);
    out << scenario_to_json(sc).dump(2) << "\n";
}

// One inequality of the feasibility report.
struct ValidationItem {
    std::string name;
    bool ok = false;
    double margin = 0.0;  // positive slack when satisfied
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    std::vector<std::string> warnings;
    bool ok = true;

    void add(const std::string& name, bool good, double margin,
             const std::string& detail = "") {
        items.push_back({name, good, margin, detail});
        ok = ok && good;
    }
};

// Checks every tuning and placement inequality the convergence theory
// relies on, with numeric slack per item. Warnings flag conditions
// that only threaten the non-randomized policies.
inline ValidationReport validate_scenario(const Scenario& sc) {
    ValidationReport rep;
    const double R = sc.vehicle.min_turn_radius();
    const NavParams& nv = sc.nav;
    const Obstacle& ob = sc.obstacle;

    rep.add("d_safe > 3R - 2R", nv.d_safe > R, nv.d_safe - R,
            "d_safe + 2R must exceed 3R");
    rep.add("d_trig > d_safe + 2R", nv.d_trig > nv.d_safe + 2.0 * R,
            nv.d_trig - nv.d_safe - 2.0 * R);
    rep.add("d_trig < d_range", nv.d_trig < nv.d_range,
            nv.d_range - nv.d_trig);

    const double d_star = ob.regular_margin();
    rep.add("d_trig < d*", nv.d_trig < d_star, d_star - nv.d_trig,
            "equidistant curves stay regular through the trigger level");

    const double R_D = ob.concavity_radius();
    if (std::isfinite(R_D)) {
        rep.add("d_trig < R_D - R", nv.d_trig < R_D - R,
                R_D - R - nv.d_trig,
                "wall following attainable on every concavity");
    }

    bool target_ok = true;
    double target_margin = 0.0;
    try {
        const auto [dt_dist, dt_s] = ob.distance(sc.target);
        target_margin = dt_dist - nv.d_trig;
        target_ok = dt_dist > nv.d_trig;
    } catch (const PenetrationError&) {
        target_ok = false;
        target_margin = -1.0;
    }
    rep.add("dist(target) > d_trig", target_ok, target_margin);

    bool start_ok = true;
    double start_margin = 0.0;
    try {
        const auto [ds_dist, ds_s] = ob.distance(sc.start.position());
        start_margin = ds_dist - nv.d_trig - 2.0 * R;
        start_ok = ds_dist > nv.d_trig + 2.0 * R;
    } catch (const PenetrationError&) {
        start_ok = false;
        start_margin = -1.0;
    }
    rep.add("dist(start) > d_trig + 2R", start_ok, start_margin);

    const double sep = dist(sc.start.position(), sc.target);
    rep.add("|start - target| > 2R", sep > 2.0 * R, sep - 2.0 * R);

    if (nv.policy != Policy::Randomized && target_ok && start_ok) {
        try {
            if (is_locked(sc.start.position(), ob, sc.target, nv.d_trig))
                rep.warnings.push_back(
                    "start is in a locked configuration; the basic policy "
                    "may cycle forever");
            if (is_locked(sc.target, ob, sc.target, nv.d_trig))
                rep.warnings.push_back(
                    "target is in a locked configuration; the basic policy "
                    "may cycle forever");
        } catch (const GeometryError&) {
            rep.warnings.push_back("locked-configuration test failed");
        }
    }
    if (!(nv.p > 0.0 && nv.p < 1.0) && nv.policy == Policy::Randomized)
        rep.warnings.push_back("randomized policy with degenerate p");

    return rep;
}

inline std::string format_report(const ValidationReport& rep) {
    std::ostringstream os;
    for (const auto& it : rep.items) {
        os << (it.ok ? "[ok]   " : "[FAIL] ") << it.name
           << "  (margin " << it.margin << ")";
        if (!it.detail.empty()) os << "  " << it.detail;
        os << "\n";
    }
    for (const auto& w : rep.warnings) os << "[warn] " << w << "\n";
    return os.str();
}

}  // namespace navsim
