#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factplan/planners.hpp"
#include "factplan/scenario.hpp"

namespace factplan {

enum class Algorithm { rrg, factrrg, prmstar };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

struct BenchmarkConfig {
    PlannerParams params;
    std::vector<Algorithm> algorithms{Algorithm::rrg, Algorithm::factrrg};
    std::size_t trials = 20;
    std::uint64_t base_seed = 0;
    std::size_t parallelism = 1;
    /// Empty means: use the scenario's heuristic.
    std::optional<HeuristicSpec> heuristic;
    /// Point count for PRM*; 0 means stop_nodes.
    std::size_t prm_samples = 0;
    /// Keep each trial's graph in the report (for dumps).
    bool keep_graphs = false;

    void validate() const;
};

struct TrialReport {
    std::size_t trial = 0;
    Algorithm algorithm = Algorithm::rrg;
    std::uint64_t seed = 0;
    std::vector<CostSample> cost_trace;
    std::optional<double> final_cost;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t splitting_edges = 0;
    std::uint64_t iterations = 0;
    double ms_per_iter_mean = 0.0;
    double ms_per_iter_std = 0.0;
    std::vector<BlockConfig> sample_log;
    std::shared_ptr<const Hypergraph> graph;
    /// Non-empty if the trial failed; the other fields are then unset.
    std::string error;
};

/// Runs every algorithm on every trial with seed = base_seed + trial. Reports
/// come back ordered by trial, then by the order of `config.algorithms`,
/// whatever the parallelism.
std::vector<TrialReport> run_benchmark(const Scenario& scenario, const BenchmarkConfig& config);

struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::rrg;
    std::size_t trials = 0;
    std::size_t solved = 0;
    std::optional<double> final_cost_mean;
    std::optional<double> final_cost_std;
    double edges_mean = 0.0;
    double edges_std = 0.0;
    double splitting_edges_mean = 0.0;
    double ms_per_iter_mean = 0.0;
    double ms_per_iter_std = 0.0;
};

/// Aggregates over successful trials; cost statistics over solved ones.
/// Standard deviations use the n-1 denominator (0 for a single value).
std::vector<AlgorithmSummary> summarize(const std::vector<TrialReport>& reports);

inline constexpr const char* kTraceHeader = "run_id,algorithm,seed,iteration,best_cost";
inline constexpr const char* kSummaryHeader =
    "algorithm,trials,solved,final_cost_mean,final_cost_std,edges_mean,edges_std,splitting_edges_mean,"
    "ms_per_iter_mean,ms_per_iter_std";

/// Writes trace.csv, summary.csv and meta.json into `out_dir` (created if
/// needed). `config_echo` is a JSON object merged into meta.json. Throws
/// std::runtime_error on I/O failure.
void emit_results(const std::vector<TrialReport>& reports, const std::filesystem::path& out_dir,
                  std::string_view config_echo_json = "{}");

/// Writes graph-<run_id>-<algorithm>.txt for every report holding a graph.
void emit_graph_dumps(const std::vector<TrialReport>& reports, const std::filesystem::path& out_dir);

/// JSON echo of a benchmark configuration, for meta.json.
std::string config_echo(const Scenario& scenario, const BenchmarkConfig& config);

}  // namespace factplan
