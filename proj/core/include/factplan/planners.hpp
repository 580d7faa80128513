#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "factplan/environment.hpp"
#include "factplan/factorization.hpp"
#include "factplan/hypergraph.hpp"

namespace factplan {

enum class RadiusMode {
    /// n and d of the queried agent-set subgraph.
    per_block,
    /// n of the queried subgraph, d of the full joint space.
    largest_space,
};

std::string_view to_string(RadiusMode mode);
RadiusMode parse_radius_mode(std::string_view text);

struct PlannerParams {
    double gamma = kDefaultGamma;
    double eta = kDefaultEta;
    double goal_bias = 0.1;
    /// Stop once a solution exists and the graph holds more than this many nodes.
    std::size_t stop_nodes = 1000;
    /// Hard cap for runs that never find a solution.
    std::uint64_t max_iterations = 100000;
    /// Iterations between best-cost recomputations.
    std::uint64_t cost_cadence = 50;
    RadiusMode radius_mode = RadiusMode::per_block;
    /// Number of leading samples kept in PlanResult::sample_log.
    std::size_t sample_log_size = 100;

    void validate() const;
};

struct Problem {
    Environment env;
    BlockConfig start;
};

struct CostSample {
    std::uint64_t iteration = 0;
    std::optional<double> cost;
};

struct PlanResult {
    Hypergraph graph;
    /// Best cost at every cadence point and at the final iteration; never increases once set.
    std::vector<CostSample> cost_trace;
    std::optional<HyperPath> solution;
    GraphStats stats;
    std::uint64_t iterations = 0;
    double ms_per_iter_mean = 0.0;
    double ms_per_iter_std = 0.0;
    std::vector<BlockConfig> sample_log;

    [[nodiscard]] std::optional<double> final_cost() const {
        return solution ? std::optional<double>(solution->total_cost) : std::nullopt;
    }
};

/// Joint-space RRG: sample, connect to every collision-free neighbour within the
/// connection radius with an undirected edge. Deterministic in `seed`.
PlanResult run_sba(const Problem& problem, const PlannerParams& params, std::uint64_t seed);

/// Factorized RRG over a motion hypergraph.
PlanResult run_fact_sba(const Problem& problem, const PlannerParams& params, const FactorizationHeuristic& heuristic,
                        std::uint64_t seed);

/// PRM* on `samples` points drawn up front with `seed`.
PlanResult run_prm_star(const Problem& problem, const PlannerParams& params, std::size_t samples, std::uint64_t seed);

/// PRM* on an explicit pointset; `radius` overrides the PRM* connection radius.
PlanResult run_prm_star(const Problem& problem, const PlannerParams& params, std::span<const BlockConfig> pointset,
                        std::optional<double> radius = std::nullopt);

}  // namespace factplan
