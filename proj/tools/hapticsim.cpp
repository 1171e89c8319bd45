// hapticsim: run single episodes or seeded batches of the leash-guided
// redirected-walking simulation.
//
//   hapticsim simulate --config city.json --seed 7 [--trace frames.jsonl]
//   hapticsim batch --config city.json --runs 100 --conditions guided,unguided --out results/
//   hapticsim scenario > city.json
//
// Exit codes: 0 success, 1 configuration error, 2 simulation fault.

#include "hapticguide/batch.hpp"
#include "hapticguide/episode.hpp"
#include "hapticguide/errors.hpp"
#include "hapticguide/scenario.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace hapticguide;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFault = 2;

void print_episode(const EpisodeResult& r) {
    std::printf("seed=%llu condition=%s bips=%d completed=%d time=%.3f mean_rc=%.4f max_rc=%.4f "
                "physical_path=%.3f virtual_path=%.3f%s\n",
                static_cast<unsigned long long>(r.seed), to_string(r.condition), r.bips, r.completed ? 1 : 0,
                r.completion_time, r.mean_rc_error, r.max_rc_error, r.physical_path_length, r.virtual_path_length,
                r.fault ? " FAULT" : "");
}

std::vector<Condition> parse_conditions(const std::string& text) {
    std::vector<Condition> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(parse_condition(item));
    }
    if (out.empty()) throw ConfigError("--conditions must name at least one condition");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leash-guided redirected walking simulator"};
    app.require_subcommand(1);

    std::optional<double> hz;
    bool quiet = false;
    app.add_option("--hz", hz, "Override the simulation rate (steps per second)");
    app.add_flag("--quiet", quiet, "Suppress progress output");

    std::string config;
    std::uint64_t seed = 1;
    std::string trace;
    std::optional<std::string> condition_override;
    auto* sim = app.add_subcommand("simulate", "Run one episode");
    sim->add_option("--config", config, "Scenario file (JSON)")->required();
    sim->add_option("--seed", seed, "Episode seed");
    sim->add_option("--trace", trace, "Write one JSON frame per line to this path");
    sim->add_option("--condition", condition_override, "guided or unguided (defaults to the scenario's)");
    sim->add_option("--hz", hz, "Override the simulation rate (steps per second)");
    sim->add_flag("--quiet", quiet, "Suppress output");

    int runs = 0;
    std::string conditions = "guided,unguided";
    std::string out_dir;
    std::uint64_t base_seed = 1;
    unsigned jobs = 1;
    auto* batch = app.add_subcommand("batch", "Run seeded episodes per condition and write CSV summaries");
    batch->add_option("--config", config, "Scenario file (JSON)")->required();
    batch->add_option("--runs", runs, "Episodes per condition")->required();
    batch->add_option("--conditions", conditions, "Comma-separated list of guided,unguided");
    batch->add_option("--out", out_dir, "Output directory")->required();
    batch->add_option("--seed", base_seed, "Base seed for the per-episode seed sequence");
    batch->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
    batch->add_option("--hz", hz, "Override the simulation rate (steps per second)");
    batch->add_flag("--quiet", quiet, "Suppress output");

    auto* dump = app.add_subcommand("scenario", "Print the built-in city scenario as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*dump) {
        std::cout << scenario_to_json(default_city_scenario()).dump(2) << '\n';
        return kExitOk;
    }

    try {
        Scenario scenario = load_scenario(config);
        if (hz) {
            scenario.hz = *hz;
            scenario.validate();
        }

        if (*sim) {
            if (condition_override) scenario.condition = parse_condition(*condition_override);
            std::ofstream trace_out;
            if (!trace.empty()) {
                trace_out.open(trace, std::ios::binary | std::ios::trunc);
                if (!trace_out) throw ConfigError("cannot write trace file '" + trace + "'");
            }
            FrameObserver observer;
            if (trace_out.is_open()) observer = [&](const FrameRecord& f) { write_frame_jsonl(trace_out, f); };
            const EpisodeResult r = run_episode(scenario, seed, observer);
            if (!quiet) print_episode(r);
            if (r.fault) {
                std::fprintf(stderr, "simulation fault: %s\n", r.fault_message.c_str());
                return kExitFault;
            }
            return kExitOk;
        }

        BatchSpec spec;
        spec.scenario = scenario;
        spec.runs = runs;
        spec.conditions = parse_conditions(conditions);
        spec.base_seed = base_seed;
        spec.out_dir = out_dir;
        spec.jobs = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
        const BatchResult result = run_batch(spec);
        int faults = 0;
        for (const auto& s : result.summary) {
            faults += s.faults;
            if (quiet) continue;
            std::printf("%-9s episodes=%d completed=%d (%.2f) bips=%.3f+-%.3f time=%.2f+-%.2f mean_rc=%.4f\n",
                        to_string(s.condition), s.episodes, s.completed, s.completion_rate(),
                        s.metric("bips").mean, s.metric("bips").std_dev, s.metric("completion_time").mean,
                        s.metric("completion_time").std_dev, s.metric("mean_rc_error").mean);
        }
        return faults > 0 ? kExitFault : kExitOk;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const SimulationFault& e) {
        std::fprintf(stderr, "simulation fault: %s\n", e.what());
        return kExitFault;
    }
}
