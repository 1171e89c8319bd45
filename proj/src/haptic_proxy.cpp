#include "hapticguide/haptic_proxy.hpp"

#include <algorithm>
#include <stdexcept>

namespace hapticguide {

namespace {

Pose integrate_unicycle(const Pose& pose, double v, double omega, double dt) {
    const double theta = pose.heading();
    if (std::abs(omega) < 1e-12) return Pose{pose.position() + pose.forward() * (v * dt), theta};
    const double theta_next = theta + omega * dt;
    const double r = v / omega;
    const Vec2 delta{r * (std::sin(theta_next) - std::sin(theta)), r * (std::cos(theta) - std::cos(theta_next))};
    return Pose{pose.position() + delta, theta_next};
}

PlannerParams planner_for(const RobotParams& params) {
    PlannerParams planner;
    planner.min_radius = 0.5 * params.wheelbase;
    return planner;
}

}  // namespace

CoLocationError colocation_error(const Pose& physical_user, const Pose& robot, const Pose& virtual_user,
                                 const Vec2& dog_position, double map_phi) {
    const Vec2 physical_rel = robot.position() - physical_user.position();
    const Vec2 virtual_rel = rotate(dog_position - virtual_user.position(), -map_phi);
    return {(physical_rel - virtual_rel).norm(), physical_rel, virtual_rel};
}

Vec2 robot_goal(const Pose& physical_user, const Pose& virtual_user, const Vec2& dog_position, double map_phi) {
    return physical_user.position() + rotate(dog_position - virtual_user.position(), -map_phi);
}

const char* to_string(ArcKind kind) {
    switch (kind) {
        case ArcKind::Straight: return "straight";
        case ArcKind::Arc: return "arc";
        case ArcKind::PivotThenPlan: return "pivot";
    }
    return "?";
}

Pose ArcPlan::pose_at(double s) const {
    const Vec2 fwd = start.forward();
    if (kind == ArcKind::Straight) return Pose{start.position() + fwd * s, start.heading()};
    if (kind != ArcKind::Arc) return start;
    const double alpha = s / radius;
    const double half = std::sin(0.5 * alpha);
    // R (1 - cos a) written as 2 R sin^2(a/2) to stay accurate for large radii
    const Vec2 offset = fwd * (radius * std::sin(alpha)) + fwd.left_normal() * (turn_sign * 2.0 * radius * half * half);
    return Pose{start.position() + offset, start.heading() + turn_sign * alpha};
}

ArcPlan plan_arc(const Pose& robot, const Vec2& goal, const PlannerParams& params) {
    if (distance(robot.position(), goal) <= params.arrival_tolerance) {
        throw std::invalid_argument("plan_arc: goal coincides with the robot");
    }
    const Vec2 local = robot.to_local(goal);
    ArcPlan plan;
    plan.start = robot;
    plan.goal = goal;

    auto pivot = [&] {
        const double bearing = local.angle();
        plan.kind = ArcKind::PivotThenPlan;
        plan.turn_sign = bearing < 0.0 ? -1.0 : 1.0;
        plan.remaining_angle = std::abs(bearing);
        return plan;
    };

    if (std::abs(local.y) < params.lateral_epsilon) {
        if (local.x > 0.0) {
            plan.kind = ArcKind::Straight;
            plan.length = local.x;
            return plan;
        }
        return pivot();
    }

    const double abs_y = std::abs(local.y);
    const double radius = local.squared_norm() / (2.0 * abs_y);
    const double sweep = 2.0 * std::atan2(abs_y, local.x);
    if (sweep > params.max_sweep || radius < params.min_radius) return pivot();

    plan.kind = ArcKind::Arc;
    plan.radius = radius;
    plan.turn_sign = sign_of(local.y);
    plan.center = robot.position() + robot.forward().left_normal() * (plan.turn_sign * radius);
    plan.length = radius * sweep;
    return plan;
}

WheelSpeeds wheel_speeds(const ArcPlan& plan, double v_cmd, double wheelbase) {
    if (!(v_cmd > 0.0)) throw std::invalid_argument("wheel_speeds: v_cmd must be positive");
    if (!(wheelbase > 0.0)) throw std::invalid_argument("wheel_speeds: wheelbase must be positive");
    switch (plan.kind) {
        case ArcKind::Straight: return {v_cmd, v_cmd};
        case ArcKind::Arc: {
            const double half = 0.5 * wheelbase;
            if (plan.radius < half) throw std::invalid_argument("wheel_speeds: arc tighter than the wheel track");
            const double inner = v_cmd * (plan.radius - half) / (plan.radius + half);
            return plan.turn_sign > 0.0 ? WheelSpeeds{inner, v_cmd} : WheelSpeeds{v_cmd, inner};
        }
        case ArcKind::PivotThenPlan: break;
    }
    throw std::invalid_argument("wheel_speeds: pivot plans have no arc speeds");
}

void RobotParams::validate() const {
    if (!(wheelbase > 0.0)) throw std::invalid_argument("robot wheelbase must be positive");
    if (!(v_max > 0.0)) throw std::invalid_argument("robot v_max must be positive");
    if (deadband < 0.0 || replan_distance < 0.0 || noise_std < 0.0) {
        throw std::invalid_argument("robot deadband, replan_distance and noise_std must be non-negative");
    }
}

RobotState robot_step(const RobotState& robot, double dt, WheelNoise noise) {
    if (dt < 0.0) throw std::invalid_argument("robot_step: dt must be non-negative");
    if (dt == 0.0 || !robot.plan) return robot;

    RobotState next = robot;
    ArcPlan& plan = *next.plan;
    const double d = robot.params.wheelbase;

    if (plan.kind == ArcKind::PivotThenPlan) {
        const double omega = 2.0 * robot.params.v_max / d;
        const double turn = std::min(omega * dt, plan.remaining_angle);
        next.pose = Pose{robot.pose.position(), robot.pose.heading() + plan.turn_sign * turn};
        plan.remaining_angle -= turn;
        if (plan.remaining_angle <= 0.0) {
            if (distance(next.pose.position(), plan.goal) > planner_for(robot.params).arrival_tolerance) {
                next.plan = plan_arc(next.pose, plan.goal, planner_for(robot.params));
            } else {
                next.plan.reset();
            }
        }
        return next;
    }

    const WheelSpeeds nominal = wheel_speeds(plan, robot.params.v_max, d);
    const double v_nominal = 0.5 * (nominal.left + nominal.right);
    const double step = std::min(v_nominal * dt, plan.remaining_length());
    const bool noiseless = noise.left == 1.0 && noise.right == 1.0;

    if (noiseless) {
        plan.traveled = step >= plan.remaining_length() ? plan.length : plan.traveled + step;
        next.pose = plan.pose_at(plan.traveled);
    } else {
        const double dt_used = step / v_nominal;
        const double vl = nominal.left * noise.left;
        const double vr = nominal.right * noise.right;
        next.pose = integrate_unicycle(robot.pose, 0.5 * (vl + vr), (vr - vl) / d, dt_used);
        plan.traveled += step;
    }
    if (plan.remaining_length() <= 0.0) next.plan.reset();
    return next;
}

RobotState proxy_control_step(const RobotState& robot, const Vec2& goal, double colocation_err, double dt,
                              WheelNoise noise) {
    RobotState next = robot;
    next.goal = goal;
    if (colocation_err <= robot.params.deadband) {
        next.plan.reset();
        return next;
    }
    const bool stale = !next.plan || distance(next.plan->goal, goal) > robot.params.replan_distance;
    if (stale) {
        const PlannerParams planner = planner_for(robot.params);
        if (distance(next.pose.position(), goal) > planner.arrival_tolerance) {
            next.plan = plan_arc(next.pose, goal, planner);
        } else {
            next.plan.reset();
        }
    }
    return robot_step(next, dt, noise);
}

}  // namespace hapticguide
