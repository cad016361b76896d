#include <iostream>
#include <string>
#include <vector>

#include "navsim/scenario.hpp"
#include "navsim/shapes.hpp"

// Writes the standard scenario corpus. All mazes share one tuning:
// v = 1, u_max = 5 (R = 0.2), d_safe = 0.35, d_trig = 0.8,
// d_range = 2. Corridors are at least 3 wide and concavity fillets
// use radius 1.2, which keeps d_trig below the regular margin and
// below R_D - R everywhere.

namespace {

using namespace navsim;

Scenario base(const std::string& name, std::vector<BoundarySegment> segs,
              Vec2 target, Pose start) {
    NavParams nav;
    nav.d_safe = 0.35;
    nav.d_trig = 0.8;
    nav.d_range = 2.0;
    nav.p = 0.5;
    nav.sigma0 = +1;
    nav.policy = Policy::Basic;
    return Scenario{name, VehicleParams(1.0, 5.0), nav, target, start,
                    build_obstacle(std::move(segs))};
}

constexpr double kConvexR = 0.5;
constexpr double kConcaveR = 1.2;

}  // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "scenarios";
    std::vector<Scenario> corpus;

    corpus.push_back(base("circle", shapes::circle({0, 0}, 2.0), {6, 0},
                          {-5, 0, 0}));

    corpus.push_back(base(
        "square",
        shapes::filleted_polygon({{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}, 1.0),
        {8, 0}, {-8, 0.5, 0}));

    // U-shape opening east; the target sits inside the slot.
    corpus.push_back(base(
        "umaze",
        shapes::filleted_polygon({{-4, -3},
                                  {4, -3},
                                  {4, -1.5},
                                  {-2, -1.5},
                                  {-2, 1.5},
                                  {4, 1.5},
                                  {4, 3},
                                  {-4, 3}},
                                 kConvexR, kConcaveR),
        {0.5, 0}, {-7, 0, 0}));

    // Two convex lobes joined over a concave notch.
    corpus.push_back(base(
        "lobes",
        shapes::filleted_polygon(
            {{-6, -2}, {6, -2}, {6, 2}, {0, -0.5}, {-6, 2}}, kConvexR,
            kConcaveR),
        {0, 4}, {0, -6, navsim::kPi / 2}));

    // Free-standing wall across the chord to the target.
    corpus.push_back(base(
        "wall",
        shapes::filleted_polygon(
            {{-8, -0.5}, {8, -0.5}, {8, 0.5}, {-8, 0.5}}, 0.5),
        {0, 4}, {0, -4, navsim::kPi / 2}));

    // Comb with two slots opening east; target deep in the lower slot.
    corpus.push_back(base(
        "labyrinth",
        shapes::filleted_polygon({{-5, -6},
                                  {5, -6},
                                  {5, -4.5},
                                  {-2, -4.5},
                                  {-2, -1.5},
                                  {5, -1.5},
                                  {5, 1.5},
                                  {-2, 1.5},
                                  {-2, 4.5},
                                  {5, 4.5},
                                  {5, 6},
                                  {-5, 6}},
                                 kConvexR, kConcaveR),
        {1, -3}, {9, 4, navsim::kPi}));

    // Walled courtyard with a single gate on the east side.
    corpus.push_back(base(
        "courtyard",
        shapes::filleted_polygon({{6.5, -1.5},
                                  {4, -1.5},
                                  {4, -4},
                                  {-4, -4},
                                  {-4, 4},
                                  {4, 4},
                                  {4, 1.5},
                                  {6.5, 1.5},
                                  {6.5, 6.5},
                                  {-6.5, 6.5},
                                  {-6.5, -6.5},
                                  {6.5, -6.5}},
                                 kConvexR, kConcaveR),
        {0, 0}, {10, 5, navsim::kPi}));

    // Two-wrap rectangular spiral. The target sits deep in the second
    // winding, which locks it for one turn direction: the run is used
    // with the randomized policy.
    {
        Scenario sc = base(
            "spiral",
            shapes::filleted_polygon({{12.5, -7.5},
                                      {-7.5, -7.5},
                                      {-7.5, 7.5},
                                      {7.5, 7.5},
                                      {7.5, -3.5},
                                      {-3.5, -3.5},
                                      {-3.5, 3.5},
                                      {3.5, 3.5},
                                      {3.5, 0.5},
                                      {-0.5, 0.5},
                                      {-0.5, -0.5},
                                      {4.5, -0.5},
                                      {4.5, 4.5},
                                      {-4.5, 4.5},
                                      {-4.5, -4.5},
                                      {8.5, -4.5},
                                      {8.5, 8.5},
                                      {-8.5, 8.5},
                                      {-8.5, -8.5},
                                      {12.5, -8.5}},
                                     kConvexR, kConcaveR),
            {2, -2}, {10, -6, navsim::kPi / 2});
        sc.nav.policy = Policy::Randomized;
        corpus.push_back(std::move(sc));
    }

    for (const auto& sc : corpus) {
        const std::string path = dir + "/" + sc.name + ".json";
        save_scenario(sc, path);
        const ValidationReport rep = validate_scenario(sc);
        std::cout << sc.name << ": " << (rep.ok ? "valid" : "INVALID")
                  << "\n";
        if (!rep.ok) {
            std::cout << format_report(rep);
            return 1;
        }
        for (const auto& w : rep.warnings)
            std::cout << "  warn: " << w << "\n";
    }
    return 0;
}
