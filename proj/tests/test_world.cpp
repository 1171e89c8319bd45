#include "hapticguide/errors.hpp"
#include "hapticguide/world.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace hapticguide;
using namespace hapticguide::oracle;

namespace {

PolygonObstacle unit_square() { return PolygonObstacle("sq", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

}  // namespace

TEST_CASE("polygon validation") {
    CHECK_THROWS_AS(PolygonObstacle("a", {{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonObstacle("a", {{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonObstacle("a", {{0, 0}, {0, 0}, {1, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonObstacle("bowtie", {{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonObstacle("nan", {{0, 0}, {1, std::nan("")}, {0, 1}}), std::invalid_argument);

    const PolygonObstacle cw("cw", {{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(signed_area(cw.vertices()) == doctest::Approx(1.0));
}

TEST_CASE("point_in_polygon on the unit square") {
    const auto sq = unit_square();
    CHECK(point_in_polygon(sq, {0.5, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {2.0, 0.5}));
    CHECK(point_in_polygon(sq, {1.0, 0.5}));
    CHECK(point_in_polygon(sq, {0.0, 0.0}));
    CHECK(point_in_polygon(sq, {1.0, 1.0}));
    CHECK_FALSE(point_in_polygon(sq, {1.0 + 1e-12, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {0.5, -1e-12}));
}

TEST_CASE("point_in_polygon matches a winding-number oracle") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int inside = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const PolygonObstacle poly("p", random_star(gen, {0, 0}, 3 + trial % 9));
        Vec2 p{u(gen), u(gen)};
        if (trial % 10 == 0) p = poly.vertices()[trial % poly.size()];
        const bool got = point_in_polygon(poly, p);
        REQUIRE(got == winding_contains(poly.vertices(), p));
        inside += got;
    }
    CHECK(inside > 200);
}

TEST_CASE("segment_first_hit basics") {
    const std::vector<PolygonObstacle> obs{unit_square()};
    const auto hit = segment_first_hit({-1, 0.5}, {2, 0.5}, obs);
    REQUIRE(hit);
    CHECK(hit->point.x == doctest::Approx(0.0));
    CHECK(hit->point.y == doctest::Approx(0.5));
    CHECK(hit->distance == doctest::Approx(1.0));

    CHECK_FALSE(segment_first_hit({5, 5}, {6, 6}, obs));

    const auto exit = segment_first_hit({0.25, 0.5}, {3, 0.5}, obs);
    REQUIRE(exit);
    CHECK(exit->distance == doctest::Approx(0.75));
    CHECK(exit->point.x == doctest::Approx(1.0));

    // Grazing along an edge reports the start of the overlap.
    const auto graze = segment_first_hit({-1, 0}, {3, 0}, obs);
    REQUIRE(graze);
    CHECK(graze->distance == doctest::Approx(1.0));

    CHECK_THROWS_AS((void)segment_first_hit({1, 1}, {1, 1}, obs), std::invalid_argument);
}

TEST_CASE("segment_first_hit matches a Cramer's-rule oracle") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    int hits = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<PolygonObstacle> obs;
        obs.emplace_back("a", random_star(gen, {-2, 0}, 5));
        obs.emplace_back("b", random_star(gen, {2.5, 1}, 7));
        const Vec2 a{u(gen), u(gen)}, b{u(gen), u(gen)};
        const auto got = segment_first_hit(a, b, obs);
        const auto want = cramer_first_hit(a, b, obs);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            ++hits;
            CHECK(std::abs(got->distance - *want) < 1e-12);
            CHECK(distance(got->point, a) == doctest::Approx(got->distance).epsilon(1e-12));
        }
    }
    CHECK(hits > 500);
}

TEST_CASE("boundary_distance and its tie-break") {
    const TrackedSpace space;
    auto w = boundary_distance(space, {1, 0});
    CHECK(w.distance == doctest::Approx(1.0));
    CHECK(w.outward_normal == Vec2{1, 0});

    w = boundary_distance(space, {0, 0});
    CHECK(w.distance == doctest::Approx(2.0));
    CHECK(w.outward_normal == Vec2{1, 0});

    w = boundary_distance(space, {1.9, 1.9});
    CHECK(w.distance == doctest::Approx(0.1));
    CHECK(w.outward_normal == Vec2{1, 0});

    w = boundary_distance(space, {-1.5, 0.2});
    CHECK(w.outward_normal == Vec2{-1, 0});
    w = boundary_distance(space, {0.2, -1.7});
    CHECK(w.outward_normal == Vec2{0, -1});

    CHECK(boundary_distance(space, {2.0, 0.0}).distance == 0.0);
    CHECK_THROWS_AS((void)boundary_distance(space, {2.0001, 0.0}), SimulationFault);
    CHECK_THROWS_AS(TrackedSpace({0, 0}, {0, 1}), std::invalid_argument);
}

TEST_CASE("environment validation") {
    Environment pe, ve;
    ve.obstacles.emplace_back("hydrant", std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}});
    ve.objects_of_interest = {"dog"};
    const std::vector<std::string> ids{"dog"};
    CHECK_NOTHROW(validate_environments(pe, ve, ids));

    ve.objects_of_interest = {"hydrant"};
    CHECK_NOTHROW(validate_environments(pe, ve, {}));

    ve.objects_of_interest = {"cat"};
    CHECK_THROWS_AS(validate_environments(pe, ve, ids), std::invalid_argument);

    ve.objects_of_interest.clear();
    pe.users.push_back(Pose{});
    CHECK_THROWS_AS(validate_environments(pe, ve, ids), std::invalid_argument);
}

TEST_CASE("angle helpers") {
    CHECK(normalize_angle(-1e-20) >= 0.0);
    CHECK(normalize_angle(-1e-20) < kTwoPi);
    CHECK(normalize_angle(kTwoPi) == 0.0);
    CHECK(wrap_pi(kPi) == doctest::Approx(kPi));
    CHECK(wrap_pi(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_pi(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK_THROWS_AS(Pose({0, 0}, std::nan("")), std::invalid_argument);
    const Pose p{{1, 2}, kPi / 2};
    const Vec2 w = p.to_world({1, 0});
    CHECK(w.x == doctest::Approx(1.0));
    CHECK(w.y == doctest::Approx(3.0));
    const Vec2 back = p.to_local(w);
    CHECK(back.x == doctest::Approx(1.0));
    CHECK(back.y == doctest::Approx(0.0).epsilon(1e-12));
}
