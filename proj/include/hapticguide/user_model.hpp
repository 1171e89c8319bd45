#pragma once
/**
 * @file user_model.hpp
 * @brief Simulated walker and the elastic leash.
 *
 * The walker pursues a virtual waypoint whose physical image comes through the
 * current redirect map, so redirection bends their physical path. A taut leash
 * pulls their heading toward the robot with a weight proportional to tension.
 */

#include "hapticguide/geometry.hpp"
#include "hapticguide/redirection.hpp"

#include <optional>

namespace hapticguide {

struct LeashState {
    double rest_length{1.8};  // meters
    double stiffness{20.0};   // N/m
    bool engaged{true};

    void validate() const;
};

/// Linear spring that only pulls: zero when slack, disengaged or degenerate.
[[nodiscard]] Vec2 leash_force(const Vec2& user_p, const Vec2& robot_p, const LeashState& leash);

struct UserParams {
    double walk_speed{1.0};     // m/s
    double turn_rate_max{2.0};  // rad/s
    double compliance{0.15};    // heading weight per newton of tension
    double arrived_radius{0.5}; // meters

    void validate() const;
};

struct SimUser {
    Pose physical{};
    UserParams params{};
    Vec2 waypoint{};  // virtual
};

struct UserStepResult {
    Pose physical;
    double walk_speed;  // executed, m/s
    double turn_rate;   // executed, rad/s (signed)
};

/// Heading the walker aims for: the waypoint bearing pulled toward the force
/// direction by min(1, compliance * |force|) of the angle between them.
[[nodiscard]] double blended_heading(double waypoint_bearing, const Vec2& force, double compliance);

/// One frame of walking. With @p reset_turn set the walker only turns in place.
/// Once the waypoint is within the arrived radius the walker stands still unless the
/// leash is taut, in which case it steps toward the robot at
/// walk_speed * min(1, compliance * |force|).
[[nodiscard]] UserStepResult user_step(const SimUser& user, const RedirectMap& map, const Vec2& force,
                                       std::optional<double> reset_turn, double dt);

}  // namespace hapticguide
