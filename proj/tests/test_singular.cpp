#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "navsim/shapes.hpp"
#include "navsim/singular.hpp"

using namespace navsim;

namespace {

Obstacle umaze() {
    return build_obstacle(shapes::filleted_polygon(
        {{-4, -3}, {4, -3}, {4, -1.5}, {-2, -1.5}, {-2, 1.5}, {4, 1.5},
         {4, 3}, {-4, 3}},
        0.5, 1.2));
}

}  // namespace

TEST_CASE("circle has two isolated singular points") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    const auto parts = singular_parts(ob, {6, 0});
    REQUIRE(parts.size() == 2);
    for (const auto& p : parts) {
        CHECK_FALSE(p.plateau);
        CHECK(p.sign_change != 0);
        // Tangency points of the target's two tangent lines:
        // x = r^2/dist = 2/3, y = +-2*sqrt(1 - 1/9).
        const Vec2 pos = ob.eval(p.mid()).position;
        CHECK(pos.x == Catch::Approx(2.0 / 3.0).margin(1e-6));
        CHECK(std::abs(pos.y) ==
              Catch::Approx(2.0 * std::sqrt(8.0) / 3.0).margin(1e-6));
    }
    CHECK(parts[0].sign_change * parts[1].sign_change == -1);
}

TEST_CASE("edge collinear with the target produces a plateau") {
    // Target on the extension of the top edge line y = 3.
    const Obstacle ob = build_obstacle(shapes::filleted_polygon(
        {{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}, 1.0));
    const auto scan = scan_zeros(ob, {10, 3});
    bool found_plateau = false;
    for (const auto& p : scan.crossings)
        if (p.plateau) found_plateau = true;
    CHECK(found_plateau);
}

TEST_CASE("crossing count is stable under scan refinement") {
    const Obstacle ob = umaze();
    const Vec2 target{0.5, 0};
    const auto coarse = scan_zeros(ob, target, 0.0, 20000);
    const auto fine = scan_zeros(ob, target, 0.0, 100000);
    REQUIRE(coarse.crossings.size() == fine.crossings.size());
    for (std::size_t i = 0; i < coarse.crossings.size(); ++i)
        CHECK(std::abs(coarse.crossings[i].mid() - fine.crossings[i].mid()) <
              1e-3 * ob.perimeter());
}

TEST_CASE("crossings bracket actual sign changes of zeta") {
    const Obstacle ob = umaze();
    const Vec2 target{0.5, 0};
    for (const auto& p : singular_parts(ob, target)) {
        const double eps = 1e-4 * ob.perimeter();
        const double before = detail::zeta_at(ob, p.s_begin - eps, target);
        const double after = detail::zeta_at(ob, p.s_end + eps, target);
        CHECK(sgn(before) == -p.sign_change);
        CHECK(sgn(after) == p.sign_change);
    }
}

TEST_CASE("sign pattern just past an isolated singular point") {
    // On convex boundary, zeta*lambda turns negative in the walk
    // direction immediately after the crossing.
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    const Vec2 target{6, 0};
    for (const auto& p : singular_parts(ob, target)) {
        for (const int dir : {+1, -1}) {
            const double s = p.mid() + dir * 1e-4;
            const TargetFrame tf = target_frame(ob, s, target);
            CHECK(dir * tf.zeta * sgn(tf.lambda) < 0.0);
        }
    }
}

TEST_CASE("domain stats on the corpus shapes") {
    SECTION("circle") {
        const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
        const DomainStats st = domain_stats(ob, {6, 0}, 1.0);
        CHECK(st.P == 0);
        CHECK(st.Q == 2);
        CHECK(st.K == 2);
        CHECK(st.F >= 2);
    }
    SECTION("umaze") {
        const Obstacle ob = umaze();
        const DomainStats st = domain_stats(ob, {0.5, 0}, 1.0);
        // Two concave fillets at the slot mouth corners.
        CHECK(st.P == 2);
        CHECK(st.Q == 2);
        CHECK(st.K == 2);
    }
}

TEST_CASE("P counts maximal concave runs, not arcs") {
    // Two adjacent concave fillets merged by a straight edge between
    // them still form two components; a lone concavity forms one.
    const Obstacle ob = build_obstacle(shapes::filleted_polygon(
        {{-6, -2}, {6, -2}, {6, 2}, {0, -0.5}, {-6, 2}}, 0.5, 1.2));
    const DomainStats st = domain_stats(ob, {0, 6}, 1.0);
    CHECK(st.P == 1);
}

TEST_CASE("d_sharp beyond the target distance is rejected") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    CHECK_THROWS_AS(domain_stats(ob, {6, 0}, 4.0), GeometryError);
    CHECK_THROWS_AS(domain_stats(ob, {6, 0}, 5.0), GeometryError);
}
