#include "hapticguide/batch.hpp"

#include "hapticguide/errors.hpp"
#include "hapticguide/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

namespace hapticguide {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t base_seed, std::uint64_t index) { return splitmix64(base_seed + index); }

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"bips",          "completed",    "completion_time",
                                                   "mean_rc_error", "max_rc_error", "physical_path_length",
                                                   "virtual_path_length"};
    return names;
}

double metric_value(const EpisodeResult& r, const std::string& name) {
    if (name == "bips") return r.bips;
    if (name == "completed") return r.completed ? 1.0 : 0.0;
    if (name == "completion_time") return r.completion_time;
    if (name == "mean_rc_error") return r.mean_rc_error;
    if (name == "max_rc_error") return r.max_rc_error;
    if (name == "physical_path_length") return r.physical_path_length;
    if (name == "virtual_path_length") return r.virtual_path_length;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

const MetricSummary& ConditionSummary::metric(const std::string& name) const {
    for (const auto& m : metrics) {
        if (m.metric == name) return m;
    }
    throw std::invalid_argument("unknown metric '" + name + "'");
}

BatchResult run_batch(const BatchSpec& spec) {
    if (spec.runs < 1) throw ConfigError("batch needs at least one run");
    if (spec.conditions.empty()) throw ConfigError("batch needs at least one condition");
    spec.scenario.validate();

    std::ofstream rows_file, stats_file;
    if (spec.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*spec.out_dir, ec);
        if (ec) throw ConfigError("cannot create output directory '" + spec.out_dir->string() + "': " + ec.message());
        rows_file = open_for_write(*spec.out_dir / "summary.csv");
        stats_file = open_for_write(*spec.out_dir / "summary_stats.csv");
    }

    const std::size_t n_cond = spec.conditions.size();
    const std::size_t total = static_cast<std::size_t>(spec.runs) * n_cond;
    BatchResult result;
    result.rows.resize(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            Scenario scenario = spec.scenario;
            scenario.condition = spec.conditions[k % n_cond];
            result.rows[k] = run_episode(scenario, episode_seed(spec.base_seed, k / n_cond));
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(total)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    for (Condition c : spec.conditions) {
        ConditionSummary s;
        s.condition = c;
        std::vector<const EpisodeResult*> rows;
        for (const auto& r : result.rows) {
            if (r.condition == c) rows.push_back(&r);
        }
        s.episodes = static_cast<int>(rows.size());
        for (const auto* r : rows) {
            s.completed += r->completed ? 1 : 0;
            s.faults += r->fault ? 1 : 0;
        }
        for (const auto& name : metric_names()) {
            double sum = 0.0;
            for (const auto* r : rows) sum += metric_value(*r, name);
            const double mean = sum / static_cast<double>(rows.size());
            double ss = 0.0;
            for (const auto* r : rows) ss += (metric_value(*r, name) - mean) * (metric_value(*r, name) - mean);
            const double sd = rows.size() > 1 ? std::sqrt(ss / static_cast<double>(rows.size() - 1)) : 0.0;
            s.metrics.push_back({name, mean, sd});
        }
        result.summary.push_back(std::move(s));
    }

    if (spec.out_dir) {
        write_rows_csv(rows_file, result.rows);
        write_summary_csv(stats_file, result.summary);
        if (!rows_file.flush() || !stats_file.flush()) throw ConfigError("failed writing batch output");
    }
    return result;
}

void write_rows_csv(std::ostream& out, const std::vector<EpisodeResult>& rows) {
    out << "seed,condition,bips,completed,completion_time,mean_rc_error,max_rc_error,"
           "physical_path_length,virtual_path_length,fault\n";
    for (const auto& r : rows) {
        out << r.seed << ',' << to_string(r.condition) << ',' << r.bips << ',' << (r.completed ? 1 : 0) << ','
            << fmt_double(r.completion_time) << ',' << fmt_double(r.mean_rc_error) << ','
            << fmt_double(r.max_rc_error) << ',' << fmt_double(r.physical_path_length) << ','
            << fmt_double(r.virtual_path_length) << ',' << (r.fault ? 1 : 0) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<ConditionSummary>& summary) {
    out << "condition,metric,mean,std,episodes\n";
    for (const auto& s : summary) {
        for (const auto& m : s.metrics) {
            out << to_string(s.condition) << ',' << m.metric << ',' << fmt_double(m.mean) << ','
                << fmt_double(m.std_dev) << ',' << s.episodes << '\n';
        }
    }
}

}  // namespace hapticguide
