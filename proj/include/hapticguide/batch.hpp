#pragma once
/**
 * @file batch.hpp
 * @brief Seeded Monte Carlo batches over experimental conditions.
 *
 * Episode i (0-based) of a batch with base seed B runs with seed splitmix64(B + i),
 * the same seed for every condition, so rows pair up across conditions. Rows are
 * ordered by episode index and then by the requested condition order, whatever
 * order the worker threads finish in.
 */

#include "hapticguide/episode.hpp"
#include "hapticguide/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hapticguide {

[[nodiscard]] std::uint64_t episode_seed(std::uint64_t base_seed, std::uint64_t index);

struct BatchSpec {
    Scenario scenario{};
    int runs{1};
    std::vector<Condition> conditions{Condition::Guided, Condition::Unguided};
    std::uint64_t base_seed{1};
    std::optional<std::filesystem::path> out_dir{};
    unsigned jobs{1};
};

struct MetricSummary {
    std::string metric;
    double mean{0.0};
    double std_dev{0.0};  // sample standard deviation, 0 for a single episode
};

struct ConditionSummary {
    Condition condition{Condition::Guided};
    int episodes{0};
    int completed{0};
    int faults{0};
    std::vector<MetricSummary> metrics;

    [[nodiscard]] const MetricSummary& metric(const std::string& name) const;
    [[nodiscard]] double completion_rate() const { return episodes ? double(completed) / episodes : 0.0; }
};

struct BatchResult {
    std::vector<EpisodeResult> rows;
    std::vector<ConditionSummary> summary;
};

/// Names of the per-episode numeric metrics, in CSV column order.
[[nodiscard]] const std::vector<std::string>& metric_names();
[[nodiscard]] double metric_value(const EpisodeResult& r, const std::string& name);

/// Runs every (episode, condition) pair, optionally writing `summary.csv` (one row per
/// episode) and `summary_stats.csv` (mean/std per metric per condition) into out_dir.
/// @throws ConfigError for runs < 1, no conditions, or an unwritable out_dir; checked
///         before any episode is simulated.
[[nodiscard]] BatchResult run_batch(const BatchSpec& spec);

void write_rows_csv(std::ostream& out, const std::vector<EpisodeResult>& rows);
void write_summary_csv(std::ostream& out, const std::vector<ConditionSummary>& summary);

}  // namespace hapticguide
