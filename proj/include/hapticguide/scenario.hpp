#pragma once
/**
 * @file scenario.hpp
 * @brief Experiment setup: tracked space, virtual city, navigation task and every
 *        module's parameters, plus the JSON scenario file that carries them.
 *
 * File layout (all sections optional except `ve.goal`; omitted keys take the
 * defaults of the corresponding parameter struct):
 *
 *   pe          center [x,y], size [w,h], start [x,y], start_heading_deg
 *   ve          start [x,y], start_heading_deg, goal [x,y], route [[x,y]...],
 *               obstacles [{id, vertices}], potential_goals [[x,y]...],
 *               objects_of_interest [id...]
 *   redirection kappa_max, rot_gain_spread, rho_max, distract_boost,
 *               reset_trigger_distance, reset_completion_tolerance_deg, reset_turn_rate_deg
 *   companion   speed_follow, speed_run, lead_offset, snap_radius, clearance,
 *               user_speed_deadband, goal_reached_radius
 *   robot       wheelbase, v_max, deadband, replan_distance, noise_std
 *   user        walk_speed, turn_rate_max, compliance, arrived_radius
 *   leash       rest_length, stiffness, engaged
 *   run         condition ("guided"|"unguided"), hz, time_limit,
 *               start_jitter_radius, random_start_heading
 *
 * Unknown keys are rejected so typos surface as configuration errors.
 */

#include "hapticguide/companion.hpp"
#include "hapticguide/haptic_proxy.hpp"
#include "hapticguide/redirection.hpp"
#include "hapticguide/user_model.hpp"
#include "hapticguide/world.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hapticguide {

enum class Condition { Guided, Unguided };

[[nodiscard]] const char* to_string(Condition c);
/// @throws ConfigError for anything but "guided" / "unguided".
[[nodiscard]] Condition parse_condition(std::string_view text);

struct NavigationTask {
    Vec2 start{};                 // virtual
    double start_heading{0.0};    // virtual, radians
    Vec2 goal{};                  // virtual
    std::vector<Vec2> route{};    // intermediate virtual waypoints, visited in order
};

struct Scenario {
    TrackedSpace pe{};
    Vec2 physical_start{};
    double physical_start_heading{0.0};
    Environment ve{};
    NavigationTask task{};
    Condition condition{Condition::Guided};

    SteerParams steer{};
    ResetParams reset{};
    CompanionParams companion{};
    RobotParams robot{};
    UserParams user{};
    LeashState leash{};

    double hz{90.0};
    double time_limit{330.0};
    double start_jitter_radius{0.5};   // meters, uniform disc around physical_start
    bool random_start_heading{true};

    /// @throws ConfigError
    void validate() const;
    [[nodiscard]] double dt() const { return 1.0 / hz; }
};

/// The stand-in city: a 4 m x 4 m room and a 3 x 3 grid of 17 m blocks on a 25 m
/// pitch, with the goal one block east of the starting intersection.
[[nodiscard]] Scenario default_city_scenario();

/// @throws ConfigError on malformed documents, unknown keys or invalid values.
[[nodiscard]] Scenario scenario_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json scenario_to_json(const Scenario& scenario);
/// @throws ConfigError when the file cannot be read or parsed.
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

}  // namespace hapticguide
