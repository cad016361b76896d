#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "navsim/obstacle.hpp"
#include "navsim/shapes.hpp"
#include "navsim/target_frame.hpp"

using namespace navsim;

namespace {

Obstacle umaze() {
    return build_obstacle(shapes::filleted_polygon(
        {{-4, -3}, {4, -3}, {4, -1.5}, {-2, -1.5}, {-2, 1.5}, {4, 1.5},
         {4, 3}, {-4, 3}},
        0.5, 1.2));
}

bool near_joint(const Obstacle& ob, double s, double tol) {
    double cum = 0.0;
    for (const auto& seg : ob.segments()) {
        if (std::abs(ob.reduce(s) - cum) < tol ||
            std::abs(ob.reduce(s) - cum - ob.perimeter()) < tol)
            return true;
        cum += seg.length();
    }
    return std::abs(ob.reduce(s) - ob.perimeter()) < tol;
}

// Frame ODE residuals by central differences. The four identities:
// lambda' = -1 + kappa*zeta, zeta' = -kappa*lambda,
// psi' = -kappa + zeta/(lambda^2+zeta^2), phi' = zeta/(lambda^2+zeta^2).
struct Residuals {
    double lambda, zeta, psi, phi;
};

Residuals frame_residuals(const Obstacle& ob, double s, const Vec2& target,
                          double h) {
    const TargetFrame c = target_frame(ob, s, target);
    const TargetFrame p = target_frame(ob, s - h, target);
    const TargetFrame n = target_frame(ob, s + h, target);
    const double kappa = ob.eval(s).kappa;
    const double r2 = c.range2();
    Residuals res;
    res.lambda = (n.lambda - p.lambda) / (2 * h) - (-1.0 + kappa * c.zeta);
    res.zeta = (n.zeta - p.zeta) / (2 * h) - (-kappa * c.lambda);
    const double dpsi = wrap_angle(n.psi - p.psi) / (2 * h);
    res.psi = dpsi - (-kappa + c.zeta / r2);
    const double dphi = wrap_angle(n.phi - p.phi) / (2 * h);
    res.phi = dphi - c.zeta / r2;
    return res;
}

}  // namespace

TEST_CASE("frame coordinates on the circle") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    const Vec2 target{10, 0};
    // s = 0 sits at (2, 0) with tangent (0, 1) and inward normal (-1, 0).
    const TargetFrame tf = target_frame(ob, 0.0, target);
    CHECK(tf.lambda == Catch::Approx(0.0).margin(1e-12));
    CHECK(tf.zeta == Catch::Approx(-8.0));
    CHECK(tf.range2() == Catch::Approx(64.0));
    CHECK(tf.phi == Catch::Approx(kPi));
}

TEST_CASE("target on the curve is rejected") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 2.0));
    CHECK_THROWS_AS(target_frame(ob, 0.0, Vec2{2, 0}), GeometryError);
}

TEST_CASE("frame ODE residuals stay small on smooth arcs") {
    const double h = 1e-4;
    struct Case {
        Obstacle ob;
        Vec2 target;
    };
    const Case cases[] = {
        {build_obstacle(shapes::circle({0, 0}, 2.0)), {6, 0}},
        {umaze(), {0.5, 0}},
    };
    for (const auto& c : cases) {
        const double L = c.ob.perimeter();
        int tested = 0;
        for (int i = 0; i < 2000; ++i) {
            const double s = L * i / 2000.0;
            if (near_joint(c.ob, s, 10 * h)) continue;
            const Residuals r = frame_residuals(c.ob, s, c.target, h);
            CHECK(std::abs(r.lambda) <= 1e-5);
            CHECK(std::abs(r.zeta) <= 1e-5);
            CHECK(std::abs(r.psi) <= 1e-5);
            CHECK(std::abs(r.phi) <= 1e-5);
            ++tested;
        }
        CHECK(tested > 1500);
    }
}

TEST_CASE("offset zeta shifts by d") {
    const Obstacle ob = umaze();
    const Vec2 target{0.5, 0};
    for (double s = 0.1; s < ob.perimeter(); s += 1.1) {
        const double z = target_frame(ob, s, target).zeta;
        CHECK(offset_zeta(ob, s, 0.35, target) ==
              Catch::Approx(z + 0.35).margin(1e-12));
    }
}

TEST_CASE("winding about a point") {
    const Obstacle ob = build_obstacle(shapes::circle({0, 0}, 1.0));
    const PolyCurve pc = ob.polygonize(0.0, 1e-4);
    CHECK(winding_about(pc, {0, 0}) == Catch::Approx(kTwoPi).margin(1e-6));
    CHECK(winding_about(pc, {5, 0}) == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("coarse sampling raises a resolution error") {
    PolyCurve pc;
    pc.points = {{1, 0}, {-1, 0.0003}, {-0.0001, -1}};
    pc.s = {0, 1, 2};
    CHECK_THROWS_AS(winding_about(pc, {0, 0}), ResolutionError);
}

TEST_CASE("target vector turns by -2 pi along offset curves") {
    struct Case {
        Obstacle ob;
        Vec2 target;
    };
    const Case cases[] = {
        {build_obstacle(shapes::circle({0, 0}, 2.0)), {6, 0}},
        {umaze(), {0.5, 0}},
    };
    for (const auto& c : cases)
        for (const double d : {0.0, 0.35, 0.8})
            CHECK(offset_r_turning(c.ob, d, c.target, 8192) ==
                  Catch::Approx(-kTwoPi).margin(1e-3));
}

TEST_CASE("offset curvature against finite differences of the curve") {
    const Obstacle ob = umaze();
    const double d = 0.6;
    const double h = 1e-4;
    for (double s = 0.1; s < ob.perimeter(); s += 0.9) {
        if (near_joint(ob, s, 20 * h)) continue;
        const auto [p0, k] = ob.offset_point(s, d);
        // Curvature from three offset samples: turning per arc length.
        const Vec2 pm = ob.offset_point(s - h, d).first;
        const Vec2 pp = ob.offset_point(s + h, d).first;
        const Vec2 t1 = (p0 - pm).normalized();
        const Vec2 t2 = (pp - p0).normalized();
        const double dturn = wrap_angle(t2.angle() - t1.angle());
        const double darc = 0.5 * (dist(pm, p0) + dist(p0, pp));
        const double k_fd = dturn / darc;
        if (std::abs(k) > 1e-9) {
            CHECK(std::abs(k_fd - k) / std::abs(k) <= 1e-5);
        } else {
            CHECK(std::abs(k_fd) <= 1e-6);
        }
    }
}

TEST_CASE("tangent and target turning agree around a convex loop") {
    // For an external point, r-turning equals tangent turning minus
    // the winding of the position about the point, which vanishes.
    const Obstacle ob = build_obstacle(shapes::circle({1, 1}, 2.0));
    const PolyCurve pc = ob.polygonize(0.0, 1e-4);
    const Vec2 p{9, 1};
    const double r_turn = offset_r_turning(ob, 0.0, p, 8192);
    const double pos_turn = winding_about(pc, p);
    std::vector<Vec2> pts = pc.points;
    pts.push_back(pts.front());
    const double tang_turn = tangent_turning(pts, true);
    CHECK(r_turn - (pos_turn - tang_turn) ==
          Catch::Approx(0.0).margin(1e-2));
}
