#include "factplan/planners.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "factplan/errors.hpp"

namespace factplan {

std::string_view to_string(RadiusMode mode) {
    return mode == RadiusMode::per_block ? "per-block" : "largest";
}

RadiusMode parse_radius_mode(std::string_view text) {
    if (text == "per-block") {
        return RadiusMode::per_block;
    }
    if (text == "largest") {
        return RadiusMode::largest_space;
    }
    throw std::invalid_argument("unknown radius mode '" + std::string(text) + "'");
}

void PlannerParams::validate() const {
    if (!(gamma > 0.0) || !(eta > 0.0)) {
        throw std::invalid_argument("gamma and eta must be positive");
    }
    if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) {
        throw std::invalid_argument("goal bias must lie in [0, 1]");
    }
    if (cost_cadence == 0) {
        throw std::invalid_argument("cost cadence must be positive");
    }
}

namespace {

void check_start(const Problem& problem) {
    const BlockConfig& x = problem.start;
    if (x.agents() != problem.env.all_agents() || x.dim() != Environment::kAgentDim) {
        throw SetupError("initial configuration must cover every agent of the environment");
    }
    if (!problem.env.collision_free(x, x)) {
        throw SetupError("initial configuration is in collision");
    }
}

class Welford {
public:
    void add(double v) {
        ++n_;
        const double delta = v - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (v - mean_);
    }
    [[nodiscard]] double mean() const { return mean_; }
    [[nodiscard]] double stddev() const { return n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1)) : 0.0; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Anytime driver shared by the incremental planners. `iterate(it, x_rand)`
/// extends the graph with one sample.
template <class Iterate>
void drive(const Problem& problem, const PlannerParams& params, std::uint64_t seed, PlanResult& result,
           Iterate iterate) {
    using Clock = std::chrono::steady_clock;
    SampleStream rng(seed);
    const GoalPredicate goal = [&env = problem.env](const BlockConfig& x) { return env.in_goal(x); };
    Welford timing;

    const auto evaluate = [&](std::uint64_t it) {
        result.solution = best_solution(result.graph, goal);
        result.cost_trace.push_back({it, result.final_cost()});
    };

    std::uint64_t it = 0;
    bool evaluated_last = false;
    while (it < params.max_iterations) {
        ++it;
        const auto t0 = Clock::now();
        BlockConfig x_rand = problem.env.sample_free(rng, params.goal_bias);
        if (result.sample_log.size() < params.sample_log_size) {
            result.sample_log.push_back(x_rand);
        }
        iterate(it, x_rand);
        timing.add(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());

        evaluated_last = false;
        if (it % params.cost_cadence == 0) {
            evaluate(it);
            evaluated_last = true;
            if (result.solution && result.graph.node_count() > params.stop_nodes) {
                break;
            }
        }
    }
    if (!evaluated_last) {
        evaluate(it);
    }
    result.iterations = it;
    result.ms_per_iter_mean = timing.mean();
    result.ms_per_iter_std = timing.stddev();
    result.stats = result.graph.stats();
}

double radius_for(const PlannerParams& params, const Hypergraph& graph, AgentSet agents, std::size_t agent_dim,
                  std::size_t total_agents) {
    const std::size_t n = graph.subgraph_size(agents);
    const std::size_t d =
        agent_dim * (params.radius_mode == RadiusMode::per_block ? agents.size() : total_agents);
    return connection_radius(n, d, params.gamma, params.eta);
}

}  // namespace

PlanResult run_sba(const Problem& problem, const PlannerParams& params, std::uint64_t seed) {
    params.validate();
    check_start(problem);
    PlanResult result;
    Hypergraph& graph = result.graph;
    graph.set_roots({graph.add_node(problem.start)});
    const std::size_t total = problem.env.agent_count();
    const Environment& env = problem.env;

    drive(problem, params, seed, result, [&](std::uint64_t it, BlockConfig& x_rand) {
        const double r = radius_for(params, graph, x_rand.agents(), x_rand.dim(), total);
        const auto neighbours = graph.near(x_rand, r);
        std::optional<NodeId> added;
        for (auto nb : neighbours) {
            const Node& near_node = graph.node(nb);
            if (!env.collision_free(near_node.config, x_rand)) {
                continue;
            }
            const double cost = transition_cost(near_node.config, x_rand);
            if (!added) {
                added = graph.add_node(x_rand, nullptr, it);
            }
            const NodeId target = *added;
            graph.add_hyperedge(nb, std::span<const NodeId>(&target, 1), cost, EdgeDirection::both);
        }
    });
    return result;
}

PlanResult run_fact_sba(const Problem& problem, const PlannerParams& params, const FactorizationHeuristic& heuristic,
                        std::uint64_t seed) {
    params.validate();
    check_start(problem);
    PlanResult result;
    Hypergraph& graph = result.graph;
    const Environment& env = problem.env;
    const std::size_t total = env.agent_count();

    {
        const Partition init = factorize(problem.start, heuristic);
        std::vector<NodeId> roots;
        for (const auto& block : init.blocks()) {
            roots.push_back(graph.add_node(block, heuristic.resources(block), 0));
        }
        graph.set_roots(std::move(roots));
    }

    drive(problem, params, seed, result, [&](std::uint64_t it, BlockConfig& x_rand) {
        const Partition parts = factorize(x_rand, heuristic);
        std::vector<std::optional<NodeId>> block_node(parts.size());
        const auto node_for_block = [&](std::size_t b) {
            if (!block_node[b]) {
                block_node[b] = graph.add_node(parts[b], heuristic.resources(parts[b]), it);
            }
            return *block_node[b];
        };

        for (const BlockGroup& group : powerset_groups(parts)) {
            const BlockConfig x_hat = group.joint(parts);
            std::vector<const BlockConfig*> dest;
            dest.reserve(group.block_indices.size());
            for (auto b : group.block_indices) {
                dest.push_back(&parts[b]);
            }

            const double r = radius_for(params, graph, group.agents, x_hat.dim(), total);
            for (auto nb : graph.near(x_hat, r)) {
                const Node& near_node = graph.node(nb);
                if (near_node.iteration == it) {
                    continue;  // sibling created by this very sample
                }
                if (near_node.resources && !heuristic.coherent(near_node, dest)) {
                    continue;
                }
                if (!env.collision_free(near_node.config, x_hat)) {
                    continue;
                }
                const double cost = transition_cost(near_node.config, dest);
                std::vector<NodeId> targets;
                targets.reserve(group.block_indices.size());
                for (auto b : group.block_indices) {
                    targets.push_back(node_for_block(b));
                }
                EdgeDirection direction = EdgeDirection::forward_only;
                if (targets.size() == 1) {
                    const Node& target = graph.node(targets.front());
                    const BlockConfig* back[] = {&graph.node(nb).config};
                    if (!target.resources || heuristic.coherent(target, back)) {
                        direction = EdgeDirection::both;
                    }
                }
                graph.add_hyperedge(nb, targets, cost, direction);
            }
        }
    });
    return result;
}

PlanResult run_prm_star(const Problem& problem, const PlannerParams& params, std::size_t samples,
                        std::uint64_t seed) {
    SampleStream rng(seed);
    std::vector<BlockConfig> points;
    points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        points.push_back(problem.env.sample_free(rng, params.goal_bias));
    }
    return run_prm_star(problem, params, points, std::nullopt);
}

PlanResult run_prm_star(const Problem& problem, const PlannerParams& params, std::span<const BlockConfig> pointset,
                        std::optional<double> radius) {
    using Clock = std::chrono::steady_clock;
    params.validate();
    check_start(problem);
    const Environment& env = problem.env;
    PlanResult result;
    Hypergraph& graph = result.graph;
    graph.set_roots({graph.add_node(problem.start)});

    const std::size_t d = problem.start.coords().size();
    const double r = radius.value_or(connection_radius(pointset.size() + 1, d, params.gamma, params.eta));
    Welford timing;
    std::uint64_t it = 0;
    for (const auto& x : pointset) {
        ++it;
        const auto t0 = Clock::now();
        if (result.sample_log.size() < params.sample_log_size) {
            result.sample_log.push_back(x);
        }
        const auto neighbours = graph.near(x, r);
        const NodeId added = graph.add_node(x, nullptr, it);
        for (auto nb : neighbours) {
            const Node& near_node = graph.node(nb);
            if (env.collision_free(near_node.config, x)) {
                graph.add_hyperedge(nb, std::span<const NodeId>(&added, 1), transition_cost(near_node.config, x),
                                    EdgeDirection::both);
            }
        }
        timing.add(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    const GoalPredicate goal = [&env](const BlockConfig& x) { return env.in_goal(x); };
    result.solution = best_solution(graph, goal);
    result.cost_trace.push_back({it, result.final_cost()});
    result.iterations = it;
    result.ms_per_iter_mean = timing.mean();
    result.ms_per_iter_std = timing.stddev();
    result.stats = graph.stats();
    return result;
}

}  // namespace factplan
