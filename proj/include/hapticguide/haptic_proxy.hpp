#pragma once
/**
 * @file haptic_proxy.hpp
 * @brief The physical robot standing in for the virtual dog.
 *
 * Co-location is relative: the robot should sit where the dog sits, measured from
 * the user, in each environment's own frame. Because redirection rotates the virtual
 * world around the user, the robot goal is recomputed every frame.
 *
 * Motion uses single circular arcs, which a differential drive realizes with one
 * constant pair of wheel speeds. Goals behind the robot, or inside its minimum turning
 * footprint, get an in-place pivot first.
 */

#include "hapticguide/geometry.hpp"

#include <optional>
#include <utility>

namespace hapticguide {

struct CoLocationError {
    double error;
    Vec2 physical_relative;                    // robot - physical user
    Vec2 virtual_relative_in_physical_frame;   // rotate(-phi) (dog - virtual user)
};

[[nodiscard]] CoLocationError colocation_error(const Pose& physical_user, const Pose& robot, const Pose& virtual_user,
                                               const Vec2& dog_position, double map_phi);

/// Physical point that puts the robot where the dog is, relative to the user.
[[nodiscard]] Vec2 robot_goal(const Pose& physical_user, const Pose& virtual_user, const Vec2& dog_position,
                              double map_phi);

enum class ArcKind { Straight, Arc, PivotThenPlan };

[[nodiscard]] const char* to_string(ArcKind kind);

/// A single motion primitive. Positions along Straight/Arc plans are evaluated in
/// closed form from the start pose, so following a plan accumulates no drift.
struct ArcPlan {
    ArcKind kind{ArcKind::Straight};
    Pose start{};
    Vec2 goal{};
    double radius{0.0};          // Arc only
    Vec2 center{};               // Arc only
    double turn_sign{0.0};       // +1 left, -1 right
    double length{0.0};          // meters of travel (Straight/Arc)
    double traveled{0.0};
    double remaining_angle{0.0}; // radians of pivot (PivotThenPlan)

    [[nodiscard]] double remaining_length() const { return length - traveled; }
    /// Angle swept by a full Arc.
    [[nodiscard]] double sweep() const { return kind == ArcKind::Arc ? length / radius : 0.0; }
    /// Pose after travelling @p s meters from the start (Straight/Arc).
    [[nodiscard]] Pose pose_at(double s) const;
};

struct PlannerParams {
    double lateral_epsilon{1e-6};  // meters; below this the goal counts as collinear
    double max_sweep{kPi};         // radians; longer arcs pivot first
    double min_radius{0.0};        // meters; tighter arcs pivot first (use wheelbase / 2)
    double arrival_tolerance{1e-9};
};

/// Plan from @p robot to @p goal.
/// @throws std::invalid_argument when the goal is within arrival tolerance of the robot.
[[nodiscard]] ArcPlan plan_arc(const Pose& robot, const Vec2& goal, const PlannerParams& params = {});

struct WheelSpeeds {
    double left;
    double right;
};

/// Wheel speeds that keep the robot on @p plan with the outer wheel at @p v_cmd.
/// @throws std::invalid_argument for v_cmd <= 0, a pivot plan, or radius < d/2.
[[nodiscard]] WheelSpeeds wheel_speeds(const ArcPlan& plan, double v_cmd, double wheelbase);

struct RobotParams {
    double wheelbase{0.2};      // meters
    double v_max{3.0};          // m/s, matches the dog's run speed
    double deadband{0.15};      // meters of co-location error tolerated
    double replan_distance{0.05};  // goal drift that forces a new plan
    double noise_std{0.0};      // relative std-dev of zero-mean wheel speed noise

    void validate() const;
};

struct RobotState {
    Pose pose{};
    RobotParams params{};
    std::optional<Vec2> goal{};
    std::optional<ArcPlan> plan{};
};

/// Multiplicative wheel actuation noise for one frame; (1, 1) is noiseless.
struct WheelNoise {
    double left{1.0};
    double right{1.0};
};

/// Closed-form unicycle update along the current plan for @p dt seconds.
/// Pivots turn in place at 2 v_max / d and hand over to a fresh plan toward the goal.
[[nodiscard]] RobotState robot_step(const RobotState& robot, double dt, WheelNoise noise = {});

/// One control frame: re-target, decide whether to (re)plan, then move.
/// Idles (drops the plan) while the co-location error is within the deadband.
[[nodiscard]] RobotState proxy_control_step(const RobotState& robot, const Vec2& goal, double colocation_err,
                                            double dt, WheelNoise noise = {});

}  // namespace hapticguide
