#pragma once
/**
 * @file episode.hpp
 * @brief Fixed-timestep episode loop and its per-episode metrics.
 *
 * Per frame, in order: reset trigger / reset or steer-to-center, map update, user
 * step, companion step, robot re-target + plan + move, leash force for the next
 * frame, metrics. The result is a pure function of (scenario, seed).
 */

#include "hapticguide/companion.hpp"
#include "hapticguide/geometry.hpp"
#include "hapticguide/scenario.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace hapticguide {

struct EpisodeResult {
    std::uint64_t seed{0};
    Condition condition{Condition::Guided};
    int bips{0};
    bool completed{false};
    double completion_time{0.0};  // seconds; the time limit when not completed
    double mean_rc_error{0.0};    // meters, guided only
    double max_rc_error{0.0};
    double physical_path_length{0.0};
    double virtual_path_length{0.0};
    bool fault{false};
    std::string fault_message{};
    int distractions{0};  // companion Follow -> Distract entries
    long steps{0};
};

struct FrameRecord {
    long step{0};
    double time{0.0};
    Pose physical_user{};
    Pose virtual_user{};
    Pose robot{};
    Vec2 dog{};
    CompanionMode mode{CompanionMode::Follow};
    bool reset_active{false};  // the user executed a reset turn this frame
    double rc_error{0.0};
    double leash_tension{0.0};
};

using FrameObserver = std::function<void(const FrameRecord&)>;

/// @throws ConfigError if the scenario is invalid. A user leaving the tracked space
///         ends the episode with fault = true instead of throwing.
[[nodiscard]] EpisodeResult run_episode(const Scenario& scenario, std::uint64_t seed,
                                        const FrameObserver& observer = {});

/// One JSON object per line.
void write_frame_jsonl(std::ostream& out, const FrameRecord& frame);

}  // namespace hapticguide
