#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "navsim/record_io.hpp"
#include "navsim/shapes.hpp"
#include "navsim/simulate.hpp"

using namespace navsim;

namespace {

Scenario circle_scenario(Policy policy = Policy::Basic) {
    NavParams nav;
    nav.d_safe = 0.35;
    nav.d_trig = 0.8;
    nav.d_range = 2.0;
    nav.policy = policy;
    return Scenario{"circle",
                    VehicleParams(1.0, 5.0),
                    nav,
                    {6, 0},
                    {-6, 0, 0},
                    build_obstacle(shapes::circle({0, 0}, 2.0))};
}

}  // namespace

TEST_CASE("unobstructed straight run arrives on schedule") {
    Scenario sc = circle_scenario();
    sc.start = {6, -3, kPi / 2.0};
    sc.target = {6, 2};
    const double dt = 1e-3;
    const RunRecord rec = run_simulation(sc, 1, dt, 20.0);
    CHECK(rec.termination == Termination::TargetReached);
    CHECK(rec.switches == 0);
    // Arrival fires at h <= max(2 v dt, 1e-4) along a length-5 line.
    CHECK(rec.t_end ==
          Catch::Approx(5.0 - 2.0 * sc.vehicle.v * dt).margin(dt + 1e-12));
    for (const auto& sm : rec.series) {
        CHECK(sm.mode == Mode::Pursuit);
        CHECK(sm.u == 0.0);
    }
}

TEST_CASE("zero time budget times out") {
    const RunRecord rec = run_simulation(circle_scenario(), 1, 1e-3, 0.0);
    CHECK(rec.termination == Termination::Timeout);
    CHECK(rec.final_target_dist > 1.0);
}

TEST_CASE("driving into the wall is reported as a collision") {
    Scenario sc = circle_scenario();
    sc.nav.d_trig = 0.01;  // avoidance effectively disabled
    sc.nav.d_safe = 0.005;
    const RunRecord rec = run_simulation(sc, 1, 1e-3, 20.0);
    CHECK(rec.termination == Termination::Collision);
    CHECK(rec.t_end < 5.0);
}

TEST_CASE("identical seeds give bit-identical records") {
    const Scenario sc = circle_scenario(Policy::Randomized);
    const RunRecord a = run_simulation(sc, 42, 1e-3, 30.0);
    const RunRecord b = run_simulation(sc, 42, 1e-3, 30.0);
    std::ostringstream sa, sb;
    write_csv(a, sa);
    write_csv(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(a.termination == Termination::TargetReached);
}

TEST_CASE("monte carlo is thread-count invariant") {
    const Scenario sc = circle_scenario(Policy::Randomized);
    const McResult one = monte_carlo(sc, 8, 7, 1e-3, 30.0, 1);
    const McResult four = monte_carlo(sc, 8, 7, 1e-3, 30.0, 4);
    REQUIRE(one.runs.size() == four.runs.size());
    for (std::size_t i = 0; i < one.runs.size(); ++i) {
        CHECK(one.runs[i].termination == four.runs[i].termination);
        CHECK(one.runs[i].t_end == four.runs[i].t_end);
        CHECK(one.runs[i].min_d == four.runs[i].min_d);
        CHECK(one.runs[i].switches == four.runs[i].switches);
    }
    CHECK(one.reached == 8);
    CHECK(one.mean_time == four.mean_time);
}

TEST_CASE("reduced model holds an equidistant circle") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 5.0));
    // Constant u = v/6 is the equivalent control at d = 1.
    ReducedState st{0.0, 1.0, 0.0};
    for (int i = 0; i < 10000; ++i)
        st = reduced_rk4_step(ob, st, 1.0 / 6.0, 1.0, 1e-3);
    CHECK(st.d == Catch::Approx(1.0).margin(1e-6));
    CHECK(st.alpha == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("reduced model coasts along a straight edge") {
    const Obstacle ob = build_obstacle(shapes::filleted_polygon(
        {{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}, 1.0));
    const double s0 = ob.distance({0, -4}).second;
    ReducedState st{s0, 1.0, 0.0};
    for (int i = 0; i < 1500; ++i)
        st = reduced_rk4_step(ob, st, 0.0, 1.0, 1e-3);
    CHECK(st.d == Catch::Approx(1.0).margin(1e-12));
    CHECK(st.s - s0 == Catch::Approx(1.5).margin(1e-12));
}

TEST_CASE("cartesian and reduced dynamics agree") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 5.0));
    const VehicleParams vp(1.0, 5.0);
    const double dt = 1e-3;
    const double u = 1.0 / 6.0;
    Pose pose{6, 0, kPi / 2.0};
    ReducedState st{ob.distance(pose.position()).second, 1.0, 0.0};
    for (int i = 0; i < 10000; ++i) {
        pose = integrate_step(pose, u, dt, vp);
        st = reduced_rk4_step(ob, st, u, vp.v, dt);
        if (i % 100 == 0) {
            const auto [d, s] = ob.distance(pose.position());
            CHECK(std::abs(d - st.d) <= 1e-4);
            const double alpha =
                wrap_angle(pose.theta - ob.eval(s).tangent.angle());
            CHECK(std::abs(wrap_angle(alpha - st.alpha)) <= 1e-4);
        }
    }
}

TEST_CASE("halving the step barely moves the outcome") {
    for (const char* name : {"circle", "umaze"}) {
        const Scenario sc = load_scenario(
            std::string(NAVSIM_SCENARIO_DIR) + "/" + name + ".json");
        const double dt = 1e-3;
        const RunRecord coarse = run_simulation(sc, 3, dt, 100.0);
        const RunRecord fine = run_simulation(sc, 3, dt / 2.0, 100.0);
        REQUIRE(coarse.termination == Termination::TargetReached);
        REQUIRE(fine.termination == Termination::TargetReached);
        CHECK(std::abs(coarse.t_end - fine.t_end) <
              2.0 * sc.vehicle.v * dt);
        // The trigger itself is sampled, so the deepest approach moves
        // by up to one step of depth between resolutions.
        CHECK(std::abs(coarse.min_d - fine.min_d) <
              1.5 * sc.vehicle.v * dt);
    }
}

TEST_CASE("record io round trip") {
    const RunRecord rec =
        run_simulation(circle_scenario(), 5, 1e-3, 30.0);
    REQUIRE_FALSE(rec.series.empty());
    std::ostringstream os;
    write_csv(rec, os);
    std::istringstream is(os.str());
    const std::vector<Sample> back = read_csv(is);
    REQUIRE(back.size() == rec.series.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].t == rec.series[i].t);
        CHECK(back[i].x == rec.series[i].x);
        CHECK(back[i].theta == rec.series[i].theta);
        CHECK(back[i].u == rec.series[i].u);
        CHECK(back[i].mode == rec.series[i].mode);
        CHECK(back[i].submode == rec.series[i].submode);
        CHECK(back[i].sigma == rec.series[i].sigma);
    }
}

TEST_CASE("record io rejects bad input") {
    SECTION("empty stream") {
        std::istringstream is("");
        CHECK_THROWS_AS(read_csv(is), IoError);
    }
    SECTION("wrong header") {
        std::istringstream is("time,x,y\n0,1,2\n");
        CHECK_THROWS_AS(read_csv(is), IoError);
    }
    SECTION("short row") {
        std::istringstream is(std::string(kCsvHeader) + "\n0,1,2\n");
        CHECK_THROWS_AS(read_csv(is), IoError);
    }
    SECTION("header-only file parses to an empty series") {
        std::istringstream is(std::string(kCsvHeader) + "\n");
        CHECK(read_csv(is).empty());
    }
}

TEST_CASE("svg plot contains the scene and the trajectory") {
    const Scenario sc = circle_scenario();
    const RunRecord rec = run_simulation(sc, 1, 1e-3, 30.0);
    std::ostringstream os;
    write_svg(rec.series, sc, os);
    const std::string svg = os.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // Obstacle fill, safety and trigger curves, several mode colors.
    CHECK(svg.find("#cccccc") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);
    CHECK(svg.find("#1f77b4") != std::string::npos);
    CHECK(svg.find("#ff7f0e") != std::string::npos);
}
