#include "hapticguide/episode.hpp"

#include "hapticguide/errors.hpp"
#include "hapticguide/haptic_proxy.hpp"
#include "hapticguide/random.hpp"
#include "hapticguide/redirection.hpp"
#include "hapticguide/user_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hapticguide {

namespace {

Vec2 clamp_into(const TrackedSpace& space, const Vec2& p) {
    const Vec2& c = space.center();
    const Vec2& h = space.half_extents();
    return {std::clamp(p.x, c.x - h.x, c.x + h.x), std::clamp(p.y, c.y - h.y, c.y + h.y)};
}

}  // namespace

EpisodeResult run_episode(const Scenario& scenario, std::uint64_t seed, const FrameObserver& observer) {
    scenario.validate();
    const double dt = scenario.dt();
    const bool guided = scenario.condition == Condition::Guided;
    const long max_steps = std::lround(scenario.time_limit * scenario.hz);

    Rng rng(seed);
    const double jitter_r = scenario.start_jitter_radius * std::sqrt(rng.uniform());
    const double jitter_a = rng.uniform(0.0, kTwoPi);
    const double start_heading =
        scenario.random_start_heading ? rng.uniform(0.0, kTwoPi) : scenario.physical_start_heading;
    const Vec2 start_p = clamp_into(scenario.pe, scenario.physical_start + unit_from_angle(jitter_a) * jitter_r);

    SimUser user{Pose{start_p, start_heading}, scenario.user, {}};
    std::size_t waypoint_index = 0;
    const auto waypoint_at = [&](std::size_t i) {
        return i < scenario.task.route.size() ? scenario.task.route[i] : scenario.task.goal;
    };
    user.waypoint = waypoint_at(waypoint_index);

    RedirectMap map;
    map.phi = normalize_angle(scenario.task.start_heading - start_heading);
    map.t = scenario.task.start - rotate(start_p, map.phi);

    Pose virtual_user = map_to_virtual(map, user.physical);
    CompanionState dog{CompanionMode::Follow, follow_target(virtual_user, scenario.companion.lead_offset), {}};
    RobotState robot;
    robot.params = scenario.robot;
    robot.pose = Pose{robot_goal(user.physical, virtual_user, dog.position, map.phi), start_heading};

    ResetState reset{false, scenario.reset};
    Vec2 force{};
    double walk_speed = 0.0;
    double turn_rate = 0.0;

    EpisodeResult result;
    result.seed = seed;
    result.condition = scenario.condition;
    result.completion_time = scenario.time_limit;
    double rc_sum = 0.0;

    for (long step = 1; step <= max_steps; ++step) {
        const Pose physical_before = user.physical;
        const Pose virtual_before = virtual_user;
        bool reset_started = false;
        std::optional<double> reset_turn;

        try {
            if (!reset.active && should_trigger_reset(scenario.pe, user.physical, reset.params)) {
                reset.active = true;
                reset_started = true;
                ++result.bips;
            }

            if (reset.active) {
                const ResetCommand cmd = reset_step(reset, user.physical, scenario.pe, dt);
                if (cmd.done) {
                    reset.active = false;
                } else {
                    map = inject_rotation(map, cmd.counter_delta, virtual_user.position());
                    reset_turn = cmd.turn_command;
                }
            }
            if (!reset.active) {
                const bool distracting = guided && dog.mode == CompanionMode::Distract;
                const double delta = steer_to_center(scenario.pe, user.physical, walk_speed, turn_rate, dt,
                                                     scenario.steer, distracting);
                map = inject_rotation(map, -delta, virtual_user.position());
            }

            const UserStepResult moved = user_step(user, map, force, reset_turn, dt);
            user.physical = moved.physical;
            walk_speed = moved.walk_speed;
            turn_rate = moved.turn_rate;
            (void)boundary_distance(scenario.pe, user.physical.position());
        } catch (const SimulationFault& fault) {
            result.fault = true;
            result.fault_message = fault.what();
            result.steps = step;
            break;
        }

        virtual_user = map_to_virtual(map, user.physical);
        if (waypoint_index < scenario.task.route.size() &&
            distance(virtual_user.position(), user.waypoint) <= scenario.user.arrived_radius) {
            user.waypoint = waypoint_at(++waypoint_index);
        }

        const DistractionContext ctx{physical_before, virtual_before, map.phi, scenario.pe, scenario.ve};
        const CompanionInputs inputs{reset_started, reset.active, walk_speed};
        const CompanionStepResult dog_step =
            companion_step(dog, scenario.companion, virtual_user, inputs, ctx, dt);
        dog = dog_step.state;
        if (dog_step.distraction_started) ++result.distractions;

        double rc = 0.0;
        if (guided) {
            const Vec2 goal = robot_goal(user.physical, virtual_user, dog.position, map.phi);
            const double err = colocation_error(user.physical, robot.pose, virtual_user, dog.position, map.phi).error;
            WheelNoise noise;
            if (scenario.robot.noise_std > 0.0) {
                noise.left = 1.0 + scenario.robot.noise_std * rng.normal();
                noise.right = 1.0 + scenario.robot.noise_std * rng.normal();
            }
            robot = proxy_control_step(robot, goal, err, dt, noise);
            rc = colocation_error(user.physical, robot.pose, virtual_user, dog.position, map.phi).error;
            force = leash_force(user.physical.position(), robot.pose.position(), scenario.leash);
            rc_sum += rc;
            result.max_rc_error = std::max(result.max_rc_error, rc);
        }

        result.physical_path_length += distance(physical_before.position(), user.physical.position());
        result.virtual_path_length += distance(virtual_before.position(), virtual_user.position());
        result.steps = step;

        if (observer) {
            observer(FrameRecord{step, step * dt, user.physical, virtual_user, robot.pose, dog.position, dog.mode,
                                 reset_turn.has_value(), rc, force.norm()});
        }

        if (distance(virtual_user.position(), scenario.task.goal) <= scenario.user.arrived_radius &&
            waypoint_index >= scenario.task.route.size()) {
            result.completed = true;
            result.completion_time = step * dt;
            break;
        }
    }
    if (guided && result.steps > 0) result.mean_rc_error = rc_sum / static_cast<double>(result.steps);
    return result;
}

void write_frame_jsonl(std::ostream& out, const FrameRecord& f) {
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "{\"step\":%ld,\"t\":%.6f,"
                  "\"physical\":[%.9g,%.9g,%.9g],\"virtual\":[%.9g,%.9g,%.9g],\"robot\":[%.9g,%.9g,%.9g],"
                  "\"dog\":[%.9g,%.9g],\"mode\":\"%s\",\"reset\":%s,\"rc_error\":%.9g,\"leash_tension\":%.9g}\n",
                  f.step, f.time, f.physical_user.position().x, f.physical_user.position().y,
                  f.physical_user.heading(), f.virtual_user.position().x, f.virtual_user.position().y,
                  f.virtual_user.heading(), f.robot.position().x, f.robot.position().y, f.robot.heading(), f.dog.x,
                  f.dog.y, to_string(f.mode), f.reset_active ? "true" : "false", f.rc_error, f.leash_tension);
    out << buf;
}

}  // namespace hapticguide
