#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "factplan/benchmark.hpp"
#include "factplan/errors.hpp"
#include "factplan/scenario.hpp"

using namespace factplan;
namespace fs = std::filesystem;

namespace {

const char* const kValid = R"({
  "name": "tiny",
  "workspace": {"bounds": [0, 0, 10, 10], "agent_radius": 0.5, "obstacles": [[4, 4, 6, 6]]},
  "agents": [
    {"name": "a", "start": [1, 5], "goal": [8, 4, 9, 6]},
    {"name": "b", "start": [9, 5], "goal": [1, 4, 2, 6]}
  ]
})";

std::string with(const std::string& from, const std::string& to) {
    std::string s = kValid;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return s.replace(pos, from.size(), to);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

class TempDir {
public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() / (std::string("factplan-") + info->name());
        fs::remove_all(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

BenchmarkConfig small_config() {
    BenchmarkConfig c;
    c.trials = 3;
    c.params.stop_nodes = 200;
    c.params.max_iterations = 3000;
    return c;
}

Scenario two_agents() { return load_scenario(FACTPLAN_SCENARIO_DIR "/cross4.json").first_agents(2); }

}  // namespace

TEST(Scenario, ParsesAndNormalizes) {
    const Scenario s = parse_scenario(kValid);
    EXPECT_EQ(s.name, "tiny");
    ASSERT_EQ(s.agents.size(), 2u);
    EXPECT_DOUBLE_EQ(s.workspace.agent_radius, 0.05);
    EXPECT_DOUBLE_EQ(s.agents[0].start.x, 0.1);
    const Rect& o = s.workspace.obstacles[0];
    EXPECT_NEAR(o.lo.x, 0.4, 1e-15);
    EXPECT_NEAR(o.hi.y, 0.6, 1e-15);
    EXPECT_EQ(s.heuristic.name, "cone");
    EXPECT_EQ(s.start().agents(), AgentSet::first(2));
}

TEST(Scenario, BundledCross4) {
    const Scenario s = load_scenario(FACTPLAN_SCENARIO_DIR "/cross4.json");
    EXPECT_EQ(s.agents.size(), 4u);
    EXPECT_EQ(s.workspace.obstacles.size(), 4u);
    const Environment env = s.environment();
    EXPECT_TRUE(env.point_free({0.5, 0.5}));
    EXPECT_FALSE(env.point_free({0.2, 0.2}));
    const Scenario two = s.first_agents(2);
    EXPECT_EQ(two.agents.size(), 2u);
    EXPECT_EQ(two.agents[1].name, "P2");
    EXPECT_THROW(s.first_agents(0), ScenarioValidationError);
    EXPECT_THROW(s.first_agents(5), ScenarioValidationError);
}

TEST(Scenario, ParseErrorsAreDistinctFromValidationErrors) {
    EXPECT_THROW(parse_scenario("{"), ScenarioParseError);
    EXPECT_THROW(parse_scenario(R"({"name": "x"})"), ScenarioParseError);
    EXPECT_THROW(parse_scenario(with("\"start\": [1, 5]", "\"start\": [1]")), ScenarioParseError);
    EXPECT_THROW(parse_scenario(with("[8, 4, 9, 6]", "[9, 4, 8, 6]")), ScenarioParseError);
    EXPECT_THROW(parse_scenario(with("\"agent_radius\": 0.5", "\"agent_radius\": \"big\"")), ScenarioParseError);

    // Start inside the obstacle.
    EXPECT_THROW(parse_scenario(with("[1, 5]", "[5, 5]")), ScenarioValidationError);
    // Overlapping starts.
    EXPECT_THROW(parse_scenario(with("[9, 5]", "[1.5, 5]")), ScenarioValidationError);
    // Non-square bounds.
    EXPECT_THROW(parse_scenario(with("[0, 0, 10, 10]", "[0, 0, 10, 12]")), ScenarioValidationError);
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ScenarioParseError);
}

TEST(Benchmark, PairedSeedsShareSamples) {
    BenchmarkConfig c = small_config();
    c.trials = 1;
    const auto reports = run_benchmark(two_agents(), c);
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_EQ(reports[0].algorithm, Algorithm::rrg);
    EXPECT_EQ(reports[1].algorithm, Algorithm::factrrg);
    EXPECT_EQ(reports[0].seed, reports[1].seed);
    EXPECT_TRUE(reports[0].error.empty());
    EXPECT_FALSE(reports[0].sample_log.empty());
    EXPECT_EQ(reports[0].sample_log, reports[1].sample_log);
}

TEST(Benchmark, ParallelMatchesSerial) {
    BenchmarkConfig c = small_config();
    c.algorithms = {Algorithm::rrg, Algorithm::factrrg, Algorithm::prmstar};
    c.base_seed = 40;
    const auto serial = run_benchmark(two_agents(), c);
    c.parallelism = 3;
    const auto parallel = run_benchmark(two_agents(), c);
    ASSERT_EQ(serial.size(), 9u);
    ASSERT_EQ(parallel.size(), 9u);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].trial, i / 3);
        EXPECT_EQ(serial[i].seed, 40 + i / 3);
        EXPECT_EQ(serial[i].algorithm, parallel[i].algorithm);
        EXPECT_EQ(serial[i].final_cost, parallel[i].final_cost);
        EXPECT_EQ(serial[i].edges, parallel[i].edges);
        EXPECT_EQ(serial[i].sample_log, parallel[i].sample_log);
    }
}

TEST(Benchmark, ConfigValidation) {
    BenchmarkConfig c = small_config();
    c.trials = 0;
    EXPECT_THROW(run_benchmark(two_agents(), c), std::invalid_argument);
    c = small_config();
    c.algorithms.clear();
    EXPECT_THROW(run_benchmark(two_agents(), c), std::invalid_argument);
    EXPECT_EQ(parse_algorithm("prmstar"), Algorithm::prmstar);
    EXPECT_THROW(parse_algorithm("rrt"), std::invalid_argument);
}

TEST(Emit, EmptyReportsGiveHeadersOnly) {
    TempDir dir;
    emit_results({}, dir.path());
    EXPECT_EQ(slurp(dir.path() / "trace.csv"), std::string(kTraceHeader) + "\n");
    EXPECT_EQ(slurp(dir.path() / "summary.csv"), std::string(kSummaryHeader) + "\n");
    const auto meta = nlohmann::json::parse(slurp(dir.path() / "meta.json"));
    EXPECT_TRUE(meta["runs"].empty());
    EXPECT_EQ(meta["edge_count_convention"], kEdgeCountConvention);
}

TEST(Emit, TraceRoundTrip) {
    TempDir dir;
    const Scenario s = two_agents();
    const BenchmarkConfig c = small_config();
    const auto reports = run_benchmark(s, c);
    emit_results(reports, dir.path(), config_echo(s, c));

    const auto rows = csv_rows(dir.path() / "trace.csv");
    ASSERT_FALSE(rows.empty());
    std::size_t expected_rows = 0;
    for (const auto& r : reports) {
        expected_rows += r.cost_trace.size();
    }
    ASSERT_EQ(rows.size(), expected_rows + 1);
    std::map<std::size_t, std::size_t> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 5u) << i;
        const std::size_t run = std::stoul(rows[i][0]);
        const auto& report = reports.at(run);
        const auto& sample = report.cost_trace.at(seen[run]++);
        EXPECT_EQ(rows[i][1], to_string(report.algorithm));
        EXPECT_EQ(std::stoull(rows[i][2]), report.seed);
        EXPECT_EQ(std::stoull(rows[i][3]), sample.iteration);
        if (sample.cost) {
            EXPECT_EQ(std::strtod(rows[i][4].c_str(), nullptr), *sample.cost);
        } else {
            EXPECT_TRUE(rows[i][4].empty());
        }
    }

    const auto meta = nlohmann::json::parse(slurp(dir.path() / "meta.json"));
    EXPECT_EQ(meta["config"]["trials"], 3);
    EXPECT_EQ(meta["config"]["agents"], 2);
    EXPECT_EQ(meta["runs"].size(), reports.size());
    EXPECT_EQ(meta["versions"]["cxx_standard"], 202002);
}

TEST(Emit, SummaryMatchesRecomputation) {
    TempDir dir;
    const auto reports = run_benchmark(two_agents(), small_config());
    emit_results(reports, dir.path());
    const auto rows = csv_rows(dir.path() / "summary.csv");
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const Algorithm algo = parse_algorithm(rows[i][0]);
        std::vector<double> costs, edges;
        for (const auto& r : reports) {
            if (r.algorithm != algo) {
                continue;
            }
            if (r.final_cost) {
                costs.push_back(*r.final_cost);
            }
            edges.push_back(static_cast<double>(r.edges));
        }
        const auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        const auto sd = [&mean](const std::vector<double>& v) {
            const double m = mean(v);
            double ss = 0.0;
            for (double x : v) ss += (x - m) * (x - m);
            return std::sqrt(ss / static_cast<double>(v.size() - 1));
        };
        EXPECT_EQ(std::stoul(rows[i][1]), edges.size());
        EXPECT_EQ(std::stoul(rows[i][2]), costs.size());
        ASSERT_EQ(costs.size(), 3u);
        EXPECT_NEAR(std::stod(rows[i][3]), mean(costs), 1e-12);
        EXPECT_NEAR(std::stod(rows[i][4]), sd(costs), 1e-12);
        EXPECT_NEAR(std::stod(rows[i][5]), mean(edges), 1e-9);
        EXPECT_NEAR(std::stod(rows[i][6]), sd(edges), 1e-9);
    }
}

TEST(Emit, RerunsAreByteIdentical) {
    TempDir dir;
    const Scenario s = two_agents();
    const BenchmarkConfig c = small_config();
    emit_results(run_benchmark(s, c), dir.path() / "a");
    emit_results(run_benchmark(s, c), dir.path() / "b");
    EXPECT_EQ(slurp(dir.path() / "a" / "trace.csv"), slurp(dir.path() / "b" / "trace.csv"));
    // Timing columns differ between runs; everything before them must not.
    const auto a = csv_rows(dir.path() / "a" / "summary.csv");
    const auto b = csv_rows(dir.path() / "b" / "summary.csv");
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(std::equal(a[i].begin(), a[i].begin() + 8, b[i].begin())) << i;
    }
}

TEST(Emit, GraphDumps) {
    TempDir dir;
    BenchmarkConfig c = small_config();
    c.trials = 1;
    c.keep_graphs = true;
    const auto reports = run_benchmark(two_agents(), c);
    emit_graph_dumps(reports, dir.path());
    const auto text = slurp(dir.path() / "graph-1-factrrg.txt");
    EXPECT_EQ(text.rfind("# factplan graph dump v1\n", 0), 0u);
    EXPECT_NE(text.find("\nedge "), std::string::npos);
    EXPECT_TRUE(fs::exists(dir.path() / "graph-0-rrg.txt"));
}
