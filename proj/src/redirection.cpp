#include "hapticguide/redirection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hapticguide {

namespace {

// Sines/cosines below this are rounding noise from exact axis-aligned headings.
constexpr double kDirectionEps = 1e-12;

}  // namespace

Pose map_to_virtual(const RedirectMap& map, const Pose& physical) {
    return Pose{map.to_virtual(physical.position()), physical.heading() + map.phi};
}

RedirectMap inject_rotation(const RedirectMap& map, double delta, const Vec2& virtual_anchor) {
    if (delta == 0.0) return map;
    // t' = anchor + R(delta) (t - anchor) keeps the anchor's preimage mapped onto the anchor.
    return RedirectMap{normalize_angle(map.phi + delta), virtual_anchor + rotate(map.t - virtual_anchor, delta)};
}

void SteerParams::validate() const {
    if (!(kappa_max > 0.0) || !(rot_gain_spread > 0.0) || !(rho_max > 0.0) || !(distract_boost > 0.0)) {
        throw std::invalid_argument("steer parameters must be strictly positive");
    }
    if (distract_boost < 1.0) throw std::invalid_argument("distract_boost must be >= 1");
}

double steer_to_center(const TrackedSpace& space, const Pose& physical_user, double walk_speed, double turn_rate,
                       double dt, const SteerParams& params, bool distracting) {
    if (!(dt > 0.0)) throw std::invalid_argument("steer_to_center: dt must be positive");
    const Vec2 to_center = space.center() - physical_user.position();
    const double dist = to_center.norm();
    if (dist == 0.0) return 0.0;
    const double sine = physical_user.forward().cross(to_center) / dist;
    if (std::abs(sine) <= kDirectionEps) return 0.0;
    const double s = sign_of(sine);
    const double base = std::min(params.rho_max * dt, params.kappa_max * std::abs(walk_speed) * dt +
                                                          params.rot_gain_spread * std::abs(turn_rate) * dt);
    return s * base * (distracting ? params.distract_boost : 1.0);
}

void ResetParams::validate() const {
    if (!(trigger_distance > 0.0)) throw std::invalid_argument("reset trigger_distance must be positive");
    if (!(completion_tolerance > 0.0) || !(completion_tolerance < kPi)) {
        throw std::invalid_argument("reset completion_tolerance must lie in (0, pi)");
    }
    if (!(turn_rate > 0.0)) throw std::invalid_argument("reset turn_rate must be positive");
}

bool should_trigger_reset(const TrackedSpace& space, const Pose& physical_user, const ResetParams& params) {
    const WallDistance wall = boundary_distance(space, physical_user.position());
    return wall.distance < params.trigger_distance && physical_user.forward().dot(wall.outward_normal) > kDirectionEps;
}

ResetCommand reset_step(const ResetState& reset, const Pose& physical_user, const TrackedSpace& space, double dt) {
    if (!reset.active) throw std::logic_error("reset_step called without an active reset");
    if (!(dt > 0.0)) throw std::invalid_argument("reset_step: dt must be positive");
    const Vec2 to_center = space.center() - physical_user.position();
    if (to_center.squared_norm() == 0.0) return {0.0, 0.0, true};
    const double error = wrap_pi(to_center.angle() - physical_user.heading());
    if (std::abs(error) < reset.params.completion_tolerance) return {0.0, 0.0, true};
    const double turn = sign_of(error) * std::min(reset.params.turn_rate, std::abs(error) / dt);
    return {turn, -turn * dt, false};
}

}  // namespace hapticguide
