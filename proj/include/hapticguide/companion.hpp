#pragma once
/**
 * @file companion.hpp
 * @brief The virtual dog: a Follow/Distract state machine that walks slightly ahead
 *        of the user and, when a reset begins, runs to a goal placed where the
 *        tracked-space center lands in the virtual world.
 */

#include "hapticguide/geometry.hpp"
#include "hapticguide/world.hpp"

#include <optional>

namespace hapticguide {

enum class CompanionMode { Follow, Distract };

[[nodiscard]] const char* to_string(CompanionMode mode);

struct CompanionParams {
    double speed_follow{1.4};       // m/s
    double speed_run{3.0};          // m/s
    Vec2 lead_offset{1.2, 0.5};     // meters, in the user's virtual frame (x forward, y left)
    double snap_radius{0.5};        // meters
    double clearance{0.2};          // meters
    double user_speed_deadband{0.05};  // m/s
    double goal_reached_radius{0.3};   // meters, Distract -> Follow

    void validate() const;
};

struct CompanionState {
    CompanionMode mode{CompanionMode::Follow};
    Vec2 position{};
    std::optional<Vec2> current_goal{};
};

/// Where the dog walks in Follow mode.
[[nodiscard]] Vec2 follow_target(const Pose& virtual_user, const Vec2& lead_offset);

/// Everything needed to place a distraction goal.
struct DistractionContext {
    Pose physical_user;
    Pose virtual_user;
    double map_phi;
    const TrackedSpace& space;
    const Environment& ve;
};

/// Superimpose the physical user->center vector on the virtual user. Prefer a nearby
/// potential goal, otherwise stop @p clearance short of the first obstacle on the way.
/// A user standing exactly on the center gets the follow target instead.
[[nodiscard]] Vec2 select_distraction_goal(const DistractionContext& ctx, double snap_radius, double clearance,
                                           const Vec2& lead_offset);

struct CompanionInputs {
    bool reset_started{false};
    bool reset_active{false};
    double user_speed{0.0};  // m/s, last executed walking speed
};

struct CompanionStepResult {
    CompanionState state;
    bool distraction_started{false};
};

/// Advance the dog one frame. @p distraction is consulted only when a reset starts.
[[nodiscard]] CompanionStepResult companion_step(const CompanionState& state, const CompanionParams& params,
                                                 const Pose& virtual_user, const CompanionInputs& inputs,
                                                 const DistractionContext& distraction, double dt);

}  // namespace hapticguide
