#include "hapticguide/user_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace hapticguide {

void LeashState::validate() const {
    if (!(rest_length > 0.0)) throw std::invalid_argument("leash rest_length must be positive");
    if (!(stiffness >= 0.0)) throw std::invalid_argument("leash stiffness must be non-negative");
}

Vec2 leash_force(const Vec2& user_p, const Vec2& robot_p, const LeashState& leash) {
    if (!leash.engaged) return {};
    const Vec2 span = robot_p - user_p;
    const double length = span.norm();
    if (length == 0.0 || length <= leash.rest_length) return {};
    return span * (leash.stiffness * (length - leash.rest_length) / length);
}

void UserParams::validate() const {
    if (!(walk_speed > 0.0)) throw std::invalid_argument("user walk_speed must be positive");
    if (!(turn_rate_max > 0.0)) throw std::invalid_argument("user turn_rate_max must be positive");
    if (!(compliance >= 0.0)) throw std::invalid_argument("user compliance must be non-negative");
    if (!(arrived_radius >= 0.0)) throw std::invalid_argument("user arrived_radius must be non-negative");
}

double blended_heading(double waypoint_bearing, const Vec2& force, double compliance) {
    const double magnitude = force.norm();
    if (magnitude == 0.0) return waypoint_bearing;
    const double weight = std::min(1.0, compliance * magnitude);
    return waypoint_bearing + weight * wrap_pi(force.angle() - waypoint_bearing);
}

UserStepResult user_step(const SimUser& user, const RedirectMap& map, const Vec2& force,
                         std::optional<double> reset_turn, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("user_step: dt must be positive");
    const Pose& pose = user.physical;
    const UserParams& p = user.params;

    if (reset_turn) {
        return {Pose{pose.position(), pose.heading() + *reset_turn * dt}, 0.0, *reset_turn};
    }

    const Vec2 to_waypoint = map.to_physical(user.waypoint) - pose.position();
    double desired = 0.0;
    double speed = p.walk_speed;
    if (to_waypoint.norm() <= p.arrived_radius) {
        const double pull = std::min(1.0, p.compliance * force.norm());
        if (pull == 0.0) return {pose, 0.0, 0.0};
        desired = force.angle();
        speed = p.walk_speed * pull;
    } else {
        desired = blended_heading(to_waypoint.angle(), force, p.compliance);
    }

    const double max_turn = p.turn_rate_max * dt;
    const double turn = std::clamp(wrap_pi(desired - pose.heading()), -max_turn, max_turn);
    const double heading = pose.heading() + turn;
    return {Pose{pose.position() + unit_from_angle(heading) * (speed * dt), heading}, speed, turn / dt};
}

}  // namespace hapticguide
