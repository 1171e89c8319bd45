#include "hapticguide/companion.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hapticguide;

namespace {

const Vec2 kOffset{1.2, 0.5};

struct Scene {
    TrackedSpace space{};
    Environment ve{};
    Pose physical{{1.5, 0.0}, 0.0};
    Pose virtual_user{{10.0, 10.0}, 0.0};
    double phi{0.0};

    DistractionContext ctx() const { return {physical, virtual_user, phi, space, ve}; }
};

}  // namespace

TEST_CASE("follow_target") {
    Vec2 t = follow_target(Pose{{0, 0}, 0.0}, kOffset);
    CHECK(t.x == doctest::Approx(1.2));
    CHECK(t.y == doctest::Approx(0.5));
    t = follow_target(Pose{{0, 0}, kPi / 2}, kOffset);
    CHECK(t.x == doctest::Approx(-0.5));
    CHECK(t.y == doctest::Approx(1.2));
    t = follow_target(Pose{{3, 4}, 1.0}, {0, 0});
    CHECK(t == Vec2{3, 4});
}

TEST_CASE("distraction goal selection") {
    Scene s;
    Vec2 g = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
    CHECK(g.x == doctest::Approx(8.5));
    CHECK(g.y == doctest::Approx(10.0));

    SUBCASE("snaps to a nearby potential goal") {
        s.ve.potential_goals = {{20, 20}, {8.6, 10.2}, {8.9, 10.0}};
        g = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
        CHECK(g == Vec2{8.6, 10.2});
    }
    SUBCASE("stops short of an obstacle") {
        s.ve.obstacles.emplace_back("wall", std::vector<Vec2>{{9.4, 9}, {9.5, 9}, {9.5, 11}, {9.4, 11}});
        g = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
        CHECK(g.x == doctest::Approx(9.7));
        CHECK(g.y == doctest::Approx(10.0));
    }
    SUBCASE("the displacement is rotated into the virtual frame") {
        s.phi = kPi / 2;
        g = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
        CHECK(g.x == doctest::Approx(10.0));
        CHECK(g.y == doctest::Approx(8.5));
    }
    SUBCASE("a user on the center gets the follow target") {
        s.physical = Pose{{0, 0}, 0.0};
        g = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
        CHECK(g.x == doctest::Approx(11.2));
        CHECK(g.y == doctest::Approx(10.5));
    }
}

TEST_CASE("distraction goals are rigid and never inside obstacles") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-1.9, 1.9), ang(0.0, kTwoPi), box(-4.0, 4.0), sz(0.2, 2.0);
    for (int trial = 0; trial < 2000; ++trial) {
        Scene s;
        s.virtual_user = Pose{{0, 0}, ang(gen)};
        s.physical = Pose{{u(gen), u(gen)}, ang(gen)};
        s.phi = ang(gen);

        // Free-space displacement matches the physical distance to the center.
        const Vec2 free = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
        CHECK(distance(free, s.virtual_user.position()) ==
              doctest::Approx(distance(s.physical.position(), s.space.center())).epsilon(1e-12));

        for (int k = 0; k < 4; ++k) {
            const Vec2 c{box(gen), box(gen)};
            const double w = sz(gen), h = sz(gen);
            const PolygonObstacle o("o", {c, c + Vec2{w, 0}, c + Vec2{w, h}, c + Vec2{0, h}});
            if (point_in_polygon(o, s.virtual_user.position())) continue;
            s.ve.obstacles.push_back(o);
        }
        for (int k = 0; k < 3; ++k) {
            const Vec2 p{box(gen), box(gen)};
            bool blocked = false;
            for (const auto& o : s.ve.obstacles) blocked = blocked || point_in_polygon(o, p);
            if (!blocked) s.ve.potential_goals.push_back(p);
        }
        const Vec2 g = select_distraction_goal(s.ctx(), 0.5, 0.2, kOffset);
        for (const auto& o : s.ve.obstacles) CHECK_FALSE(point_in_polygon(o, g));
    }
}

TEST_CASE("companion state machine") {
    Scene s;
    const CompanionParams params;
    const double dt = 1.0 / 90.0;
    const Pose user{{10, 10}, 0.0};
    CompanionState dog{CompanionMode::Follow, follow_target(user, params.lead_offset), {}};

    SUBCASE("stays put while the user stands still") {
        const auto r = companion_step(dog, params, user, {false, false, 0.0}, s.ctx(), dt);
        CHECK(r.state.position == dog.position);
        CHECK(r.state.mode == CompanionMode::Follow);
    }
    SUBCASE("a reset starts a distraction") {
        const auto r = companion_step(dog, params, user, {true, true, 0.0}, s.ctx(), dt);
        CHECK(r.distraction_started);
        CHECK(r.state.mode == CompanionMode::Distract);
        REQUIRE(r.state.current_goal);
        CHECK(r.state.current_goal->x == doctest::Approx(8.5));
    }
    SUBCASE("arrival is clamped onto the goal") {
        dog.mode = CompanionMode::Distract;
        dog.current_goal = Vec2{5, 5};
        dog.position = Vec2{5.1, 5};
        const auto r = companion_step(dog, params, user, {false, true, 0.0}, s.ctx(), 0.5 / params.speed_run);
        CHECK(r.state.position == Vec2{5, 5});
        CHECK(r.state.mode == CompanionMode::Distract);  // reset still running
        const auto done = companion_step(r.state, params, user, {false, false, 0.0}, s.ctx(), dt);
        CHECK(done.state.mode == CompanionMode::Follow);
        CHECK_FALSE(done.state.current_goal);
    }
    SUBCASE("stays distracting until the goal is reached") {
        dog.mode = CompanionMode::Distract;
        dog.current_goal = Vec2{0, 0};
        dog.position = Vec2{5, 0};
        const auto r = companion_step(dog, params, user, {false, false, 0.0}, s.ctx(), dt);
        CHECK(r.state.mode == CompanionMode::Distract);
    }
}

TEST_CASE("random dog walks respect speed and the goal invariant") {
    Scene s;
    const CompanionParams params;
    const double dt = 1.0 / 90.0;
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0), ang(0.0, kTwoPi);
    CompanionState dog{CompanionMode::Follow, {0, 0}, {}};
    Pose user{{10, 10}, 0.0};
    bool reset_active = false;
    for (int i = 0; i < 20000; ++i) {
        user = Pose{user.position() + unit_from_angle(ang(gen)) * (u(gen) * dt), user.heading() + u(gen) - 0.5};
        const bool start = !reset_active && u(gen) < 0.01;
        if (start) reset_active = true;
        else if (reset_active && u(gen) < 0.02) reset_active = false;
        s.physical = Pose{{u(gen) * 3 - 1.5, u(gen) * 3 - 1.5}, 0.0};
        s.virtual_user = user;
        const auto r = companion_step(dog, params, user, {start, reset_active, u(gen)}, s.ctx(), dt);
        const double speed = dog.mode == CompanionMode::Distract || r.state.mode == CompanionMode::Distract
                                 ? params.speed_run
                                 : params.speed_follow;
        CHECK(distance(r.state.position, dog.position) <= speed * dt + 1e-12);
        if (r.state.mode == CompanionMode::Distract) CHECK(r.state.current_goal.has_value());
        dog = r.state;
    }
}
