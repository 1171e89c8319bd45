#include "hapticguide/batch.hpp"
#include "hapticguide/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hapticguide;

namespace {

BatchSpec small_batch(int runs, unsigned jobs = 1) {
    BatchSpec spec;
    spec.scenario = default_city_scenario();
    spec.scenario.time_limit = 20.0;
    spec.runs = runs;
    spec.jobs = jobs;
    return spec;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("seed splitting") {
    CHECK(episode_seed(1, 0) == episode_seed(1, 0));
    CHECK(episode_seed(1, 0) != episode_seed(1, 1));
    CHECK(episode_seed(1, 1) == episode_seed(2, 0));
}

TEST_CASE("rows pair up and summaries match the rows") {
    const BatchResult r = run_batch(small_batch(4));
    REQUIRE(r.rows.size() == 8);
    for (std::size_t k = 0; k < r.rows.size(); k += 2) {
        CHECK(r.rows[k].condition == Condition::Guided);
        CHECK(r.rows[k + 1].condition == Condition::Unguided);
        CHECK(r.rows[k].seed == r.rows[k + 1].seed);
        CHECK(r.rows[k].seed == episode_seed(1, k / 2));
    }
    REQUIRE(r.summary.size() == 2);
    for (const auto& s : r.summary) {
        CHECK(s.episodes == 4);
        for (const auto& name : metric_names()) {
            double sum = 0.0;
            for (const auto& row : r.rows) {
                if (row.condition == s.condition) sum += metric_value(row, name);
            }
            CHECK(s.metric(name).mean == doctest::Approx(sum / 4.0));
        }
    }
}

TEST_CASE("a single episode is its own summary") {
    BatchSpec spec = small_batch(1);
    spec.conditions = {Condition::Unguided};
    const BatchResult r = run_batch(spec);
    REQUIRE(r.rows.size() == 1);
    const auto& s = r.summary.at(0);
    for (const auto& name : metric_names()) {
        CHECK(s.metric(name).mean == metric_value(r.rows[0], name));
        CHECK(s.metric(name).std_dev == 0.0);
    }
}

TEST_CASE("parallel batches write identical files") {
    const auto base = std::filesystem::temp_directory_path() / "hapticguide_test_batch";
    std::filesystem::remove_all(base);
    BatchSpec serial = small_batch(6, 1);
    serial.out_dir = base / "serial";
    BatchSpec parallel = small_batch(6, 4);
    parallel.out_dir = base / "parallel";
    (void)run_batch(serial);
    (void)run_batch(parallel);
    const std::string rows = slurp(base / "serial" / "summary.csv");
    CHECK(rows.rfind("seed,condition,bips,completed,completion_time,", 0) == 0);
    CHECK(rows == slurp(base / "parallel" / "summary.csv"));
    CHECK(slurp(base / "serial" / "summary_stats.csv") == slurp(base / "parallel" / "summary_stats.csv"));
    std::filesystem::remove_all(base);
}

TEST_CASE("invalid batches fail before simulating") {
    BatchSpec spec = small_batch(0);
    CHECK_THROWS_AS((void)run_batch(spec), ConfigError);
    spec = small_batch(1);
    spec.conditions.clear();
    CHECK_THROWS_AS((void)run_batch(spec), ConfigError);

    const auto blocker = std::filesystem::temp_directory_path() / "hapticguide_blocker";
    std::ofstream(blocker) << "x";
    spec = small_batch(1);
    spec.out_dir = blocker / "out";
    CHECK_THROWS_AS((void)run_batch(spec), ConfigError);
    std::filesystem::remove(blocker);
}

TEST_CASE("csv rows") {
    EpisodeResult r;
    r.seed = 7;
    r.condition = Condition::Unguided;
    r.bips = 3;
    r.completion_time = 12.5;
    std::ostringstream out;
    write_rows_csv(out, {r});
    CHECK(out.str() ==
          "seed,condition,bips,completed,completion_time,mean_rc_error,max_rc_error,"
          "physical_path_length,virtual_path_length,fault\n"
          "7,unguided,3,0,12.5,0,0,0,0,0\n");
}
