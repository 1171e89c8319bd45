#include "hapticguide/companion.hpp"

#include <algorithm>
#include <stdexcept>

namespace hapticguide {

const char* to_string(CompanionMode mode) {
    return mode == CompanionMode::Follow ? "follow" : "distract";
}

void CompanionParams::validate() const {
    if (!(speed_follow > 0.0) || !(speed_run > 0.0)) throw std::invalid_argument("companion speeds must be positive");
    if (snap_radius < 0.0 || clearance < 0.0 || user_speed_deadband < 0.0 || goal_reached_radius < 0.0) {
        throw std::invalid_argument("companion radii and deadband must be non-negative");
    }
}

Vec2 follow_target(const Pose& virtual_user, const Vec2& lead_offset) {
    return virtual_user.to_world(lead_offset);
}

Vec2 select_distraction_goal(const DistractionContext& ctx, double snap_radius, double clearance,
                             const Vec2& lead_offset) {
    const Vec2 w = ctx.space.center() - ctx.physical_user.position();
    if (w.squared_norm() == 0.0) return follow_target(ctx.virtual_user, lead_offset);

    const Vec2 start = ctx.virtual_user.position();
    const Vec2 end = start + rotate(w, ctx.map_phi);

    const Vec2* snapped = nullptr;
    double snapped_dist = snap_radius;
    for (const auto& g : ctx.ve.potential_goals) {
        const double d = distance(g, end);
        if (d <= snapped_dist) {
            snapped = &g;
            snapped_dist = d;
        }
    }
    if (snapped) return *snapped;

    if (const auto hit = segment_first_hit(start, end, ctx.ve.obstacles)) {
        const double along = std::max(0.0, hit->distance - clearance);
        return start + (end - start).normalized() * along;
    }
    return end;
}

CompanionStepResult companion_step(const CompanionState& state, const CompanionParams& params,
                                   const Pose& virtual_user, const CompanionInputs& inputs,
                                   const DistractionContext& distraction, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("companion_step: dt must be positive");
    CompanionStepResult out{state, false};
    CompanionState& next = out.state;

    if (inputs.reset_started) {
        next.mode = CompanionMode::Distract;
        next.current_goal = select_distraction_goal(distraction, params.snap_radius, params.clearance,
                                                    params.lead_offset);
        out.distraction_started = true;
    }

    std::optional<Vec2> target;
    double speed = 0.0;
    if (next.mode == CompanionMode::Distract) {
        target = next.current_goal;
        speed = params.speed_run;
    } else if (std::abs(inputs.user_speed) > params.user_speed_deadband) {
        target = follow_target(virtual_user, params.lead_offset);
        speed = params.speed_follow;
    }

    if (target) {
        const Vec2 to_target = *target - next.position;
        const double gap = to_target.norm();
        const double reach = speed * dt;
        next.position = gap <= reach ? *target : next.position + to_target * (reach / gap);
    }

    if (next.mode == CompanionMode::Distract && !inputs.reset_active &&
        distance(next.position, *next.current_goal) <= params.goal_reached_radius) {
        next.mode = CompanionMode::Follow;
        next.current_goal.reset();
    }
    return out;
}

}  // namespace hapticguide
