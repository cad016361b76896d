#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "navsim/obstacle.hpp"
#include "navsim/shapes.hpp"

using namespace navsim;

namespace {

// Independent distance oracle: dense sampling of every segment.
double brute_force_distance(const Obstacle& ob, const Vec2& r, int per_seg) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seg : ob.segments()) {
        for (int k = 0; k <= per_seg; ++k) {
            const double t = seg.length() * k / per_seg;
            best = std::min(best, dist(seg.eval(t).position, r));
        }
    }
    return best;
}

Obstacle unit_square_filleted() {
    return build_obstacle(shapes::filleted_polygon(
        {{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}, 1.0));
}

}  // namespace

TEST_CASE("circle obstacle basics") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    CHECK(ob.perimeter() == Catch::Approx(4.0 * kPi));
    CHECK(ob.eval(0.0).kappa == Catch::Approx(0.5));
    CHECK(ob.eval(3.7).kappa == Catch::Approx(0.5));
    CHECK(std::isinf(ob.concavity_radius()));
    CHECK(std::isinf(ob.regular_margin()));
}

TEST_CASE("concavity radius is the smallest concave arc radius") {
    const Obstacle ob = build_obstacle(shapes::filleted_polygon(
        {{-20, -15}, {20, -15}, {20, -7}, {-10, -7}, {-10, 7}, {20, 7},
         {20, 15}, {-20, 15}},
        2.0, 5.0));
    CHECK(ob.concavity_radius() == Catch::Approx(5.0));
}

TEST_CASE("chain validation errors") {
    SECTION("open chain") {
        std::vector<BoundarySegment> segs;
        segs.push_back(BoundarySegment::arc({0, 0}, 1.0, 0.0, kPi, true));
        segs.push_back(
            BoundarySegment::line({-1.0, 0.5}, {1.0, 0.5}));
        CHECK_THROWS_AS(build_obstacle(std::move(segs)), GeometryError);
    }
    SECTION("tangent discontinuity") {
        // Plain square: four corners, no fillets.
        std::vector<BoundarySegment> segs;
        segs.push_back(BoundarySegment::line({-1, -1}, {1, -1}));
        segs.push_back(BoundarySegment::line({1, -1}, {1, 1}));
        segs.push_back(BoundarySegment::line({1, 1}, {-1, 1}));
        segs.push_back(BoundarySegment::line({-1, 1}, {-1, -1}));
        CHECK_THROWS_AS(build_obstacle(std::move(segs)), GeometryError);
    }
    SECTION("empty") {
        CHECK_THROWS_AS(build_obstacle({}), GeometryError);
    }
}

TEST_CASE("distance query on the circle") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    const auto [d, s] = ob.distance({5, 0});
    CHECK(d == Catch::Approx(3.0));
    CHECK(ob.eval(s).position.x == Catch::Approx(2.0).margin(1e-9));
    CHECK(ob.eval(s).position.y == Catch::Approx(0.0).margin(1e-9));
    CHECK_THROWS_AS(ob.distance({0.3, -0.2}), PenetrationError);
}

TEST_CASE("distance matches the dense sampling oracle") {
    const Obstacle ob = unit_square_filleted();
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> coord(-9.0, 9.0);
    int checked = 0;
    while (checked < 40) {
        const Vec2 r{coord(gen), coord(gen)};
        if (ob.contains(r)) continue;
        double d;
        try {
            d = ob.distance(r).first;
        } catch (const PenetrationError&) {
            continue;  // sample on the boundary within tolerance
        }
        const double oracle = brute_force_distance(ob, r, 100000);
        CHECK(d == Catch::Approx(oracle).margin(1e-7));
        ++checked;
    }
}

TEST_CASE("boundary eval tangent against finite differences") {
    const Obstacle ob = unit_square_filleted();
    const double h = 1e-4;
    for (double s = 0.05; s < ob.perimeter(); s += 0.37) {
        const BoundaryPoint bp = ob.eval(s);
        // Skip the immediate vicinity of segment joints.
        bool near_joint = false;
        double cum = 0.0;
        for (const auto& seg : ob.segments()) {
            if (std::abs(s - cum) < 10 * h) near_joint = true;
            cum += seg.length();
        }
        if (near_joint) continue;
        const Vec2 fd = (ob.eval(s + h).position - ob.eval(s - h).position) *
                        (1.0 / (2.0 * h));
        CHECK(dist(fd, bp.tangent) <= 1e-6);
    }
}

TEST_CASE("normals point into the obstacle") {
    const Obstacle ob = unit_square_filleted();
    for (double s = 0.0; s < ob.perimeter(); s += 0.23) {
        const BoundaryPoint bp = ob.eval(s);
        CHECK(ob.contains(bp.position + 1e-3 * bp.normal));
        CHECK_FALSE(ob.contains(bp.position - 1e-3 * bp.normal));
    }
}

TEST_CASE("offset point and curvature") {
    SECTION("circle") {
        const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
        const auto [p, k] = ob.offset_point(0.0, 1.0);
        CHECK(dist(p, {0, 0}) == Catch::Approx(3.0));
        CHECK(k == Catch::Approx(1.0 / 3.0));
    }
    SECTION("concave arc") {
        // kappa = -1/4 offset by 1 gives -1/3.
        const double k = -0.25;
        const double d = 1.0;
        CHECK(k / (1.0 + k * d) == Catch::Approx(-1.0 / 3.0));
    }
    SECTION("line") {
        const Obstacle ob = unit_square_filleted();
        double s_line = 0.0;
        double cum = 0.0;
        for (const auto& seg : ob.segments()) {
            if (!seg.is_arc()) {
                s_line = cum + 0.5 * seg.length();
                break;
            }
            cum += seg.length();
        }
        CHECK(ob.offset_point(s_line, 0.7).second == 0.0);
    }
    SECTION("beyond the regular margin") {
        const Obstacle ob = build_obstacle(shapes::filleted_polygon(
            {{-4, -3}, {4, -3}, {4, -1.5}, {-2, -1.5}, {-2, 1.5}, {4, 1.5},
             {4, 3}, {-4, 3}},
            0.5, 1.2));
        CHECK_THROWS_AS(ob.offset_point(0.0, ob.regular_margin() + 0.01),
                        GeometryError);
    }
}

TEST_CASE("offset and distance round trip") {
    const Obstacle ob = unit_square_filleted();
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> us(0.0, ob.perimeter());
    const double d_hi = std::min(ob.regular_margin(), 4.0) * 0.9;
    std::uniform_real_distribution<double> ud(0.05, d_hi);
    for (int i = 0; i < 50; ++i) {
        const double s = us(gen);
        const double d = ud(gen);
        const Vec2 p = ob.offset_point(s, d).first;
        const auto [dq, sq] = ob.distance(p);
        CHECK(dq == Catch::Approx(d).margin(1e-7));
        CHECK(dist(ob.eval(sq).position, ob.eval(s).position) <= 1e-6);
    }
}

TEST_CASE("regular margin of the U-maze clears the trigger level") {
    const Obstacle ob = build_obstacle(shapes::filleted_polygon(
        {{-4, -3}, {4, -3}, {4, -1.5}, {-2, -1.5}, {-2, 1.5}, {4, 1.5},
         {4, 3}, {-4, 3}},
        0.5, 1.2));
    // Slot is 3 wide and the concave fillets give R_D = 1.2; the
    // tightest exterior pinch sits at the 90 degree concave fillets.
    CHECK(ob.regular_margin() > 0.8);
    CHECK(ob.regular_margin() <= 1.2);
}

TEST_CASE("polygonize respects offsets and containment") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    const PolyCurve pc = ob.polygonize(1.0, 1e-3);
    for (const auto& p : pc.points)
        CHECK(p.norm() == Catch::Approx(3.0).margin(2e-3));
    CHECK(pc.contains({0, 0}));
    CHECK(pc.contains({2.9, 0}));
    CHECK_FALSE(pc.contains({3.1, 0}));
    CHECK(pc.signed_area() > 0.0);
}

TEST_CASE("self intersection is rejected") {
    // Bowtie out of two arcs and two crossing lines, C1 at joints by
    // construction of the arcs' entry tangents.
    std::vector<Vec2> verts{{0, 0}, {4, 3}, {4, -3}, {0, 0.0001}, {-4, -3},
                            {-4, 3}};
    CHECK_THROWS_AS(
        build_obstacle(shapes::filleted_polygon(verts, 0.3)),
        GeometryError);
}
