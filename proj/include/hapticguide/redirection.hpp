#pragma once
/**
 * @file redirection.hpp
 * @brief Redirected walking: the rigid physical->virtual map, steer-to-center
 *        rotation injection and the reset state machine.
 *
 * The map sends a physical point x to rotate(phi) * x + t. Injecting a rotation
 * about the user's virtual position turns the whole virtual world around the
 * user's viewpoint; a user who keeps pursuing a virtual target then bends their
 * physical path the opposite way.
 */

#include "hapticguide/geometry.hpp"
#include "hapticguide/world.hpp"

namespace hapticguide {

struct RedirectMap {
    double phi{0.0};  // radians, kept in [0, 2pi)
    Vec2 t{};

    [[nodiscard]] Vec2 to_virtual(const Vec2& physical) const { return rotate(physical, phi) + t; }
    [[nodiscard]] Vec2 to_physical(const Vec2& virtual_point) const { return rotate(virtual_point - t, -phi); }
    /// Direction vectors only rotate.
    [[nodiscard]] Vec2 direction_to_physical(const Vec2& virtual_dir) const { return rotate(virtual_dir, -phi); }
    [[nodiscard]] Vec2 direction_to_virtual(const Vec2& physical_dir) const { return rotate(physical_dir, phi); }
};

[[nodiscard]] Pose map_to_virtual(const RedirectMap& map, const Pose& physical);

/// Rotate the virtual world by @p delta about @p virtual_anchor. The anchor keeps its
/// virtual position and the virtual heading of anything at the anchor grows by delta.
[[nodiscard]] RedirectMap inject_rotation(const RedirectMap& map, double delta, const Vec2& virtual_anchor);

struct SteerParams {
    double kappa_max{1.0 / 7.5};      // rad per meter walked
    double rot_gain_spread{0.2};      // rad injected per rad turned
    double rho_max{0.35};             // rad/s cap
    double distract_boost{2.0};

    /// @throws std::invalid_argument
    void validate() const;
};

/// Steer-to-center magnitude for one frame.
///
/// Returns the physical turn to induce this frame: positive means the user's
/// physical path should curve counter-clockwise. The caller realizes it with
/// inject_rotation(map, -delta, ...), which makes a target-seeking user turn by
/// +delta. Zero at the center, when heading straight at or away from it, and when
/// the user neither walks nor turns.
[[nodiscard]] double steer_to_center(const TrackedSpace& space, const Pose& physical_user, double walk_speed,
                                     double turn_rate, double dt, const SteerParams& params, bool distracting);

struct ResetParams {
    double trigger_distance{0.5};                    // meters
    double completion_tolerance{10.0 * kPi / 180.0}; // radians
    double turn_rate{0.5 * kPi};                      // rad/s, in-place turn of the user

    void validate() const;
};

struct ResetState {
    bool active{false};
    ResetParams params{};
};

/// Trigger rule: close to a wall and heading out through it.
[[nodiscard]] bool should_trigger_reset(const TrackedSpace& space, const Pose& physical_user,
                                        const ResetParams& params);

struct ResetCommand {
    double turn_command{0.0};   // rad/s, signed
    double counter_delta{0.0};  // rotation to inject this frame
    bool done{false};
};

/// One frame of an active reset: turn in place toward the tracked-space center and
/// cancel the physical turn in the virtual world. The commanded turn never overshoots
/// the center direction, so executing it for @p dt changes the physical heading by
/// exactly turn_command * dt and counter_delta is its negation.
[[nodiscard]] ResetCommand reset_step(const ResetState& reset, const Pose& physical_user,
                                      const TrackedSpace& space, double dt);

}  // namespace hapticguide
