#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "factplan/agents.hpp"
#include "factplan/cone.hpp"
#include "factplan/kd_index.hpp"

namespace factplan {

enum class NodeId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::size_t index(NodeId id) { return static_cast<std::size_t>(id); }
constexpr std::size_t index(EdgeId id) { return static_cast<std::size_t>(id); }

/// Per-agent regions assumed to contain every remaining solution path from a
/// node; one cone per member agent in canonical order.
using FutureResources = std::vector<Cone>;

struct Node {
    BlockConfig config;
    std::shared_ptr<const FutureResources> resources;
    /// Planner iteration that created the node (0 for the initial nodes).
    std::uint64_t iteration = 0;
};

struct HyperEdge {
    NodeId source{};
    std::vector<NodeId> targets;
    double cost = 0.0;

    [[nodiscard]] bool splitting() const { return targets.size() > 1; }
};

enum class EdgeDirection {
    forward_only,
    /// Standard edges only: also record the reverse edge (undirected RRG semantics).
    both,
};

struct GraphStats {
    std::size_t nodes = 0;
    /// Directed count: an undirected block edge contributes two.
    std::size_t edges = 0;
    std::size_t splitting_edges = 0;
    std::map<std::uint32_t, std::size_t> nodes_per_agent_set;
};

inline constexpr const char* kEdgeCountConvention = "directed (undirected block edges count twice)";

inline constexpr double kDefaultGamma = 100.0;
inline constexpr double kDefaultEta = 100.0;

/// min(gamma (log n / n)^(1/d), eta); returns eta for n <= 1.
double connection_radius(std::size_t n, std::size_t d, double gamma = kDefaultGamma, double eta = kDefaultEta);

/// Motion hypergraph. Nodes with the same agent set share a spatial index;
/// splitting edges always map a node onto nodes over a partition of its agents.
class Hypergraph {
public:
    NodeId add_node(BlockConfig config, std::shared_ptr<const FutureResources> resources = nullptr,
                    std::uint64_t iteration = 0);

    /// Stored nodes over exactly `query.agents()` within `radius`, ascending id.
    [[nodiscard]] std::vector<NodeId> near(const BlockConfig& query, double radius) const;

    EdgeId add_hyperedge(NodeId source, std::span<const NodeId> targets, double cost,
                         EdgeDirection direction = EdgeDirection::both);

    void set_roots(std::vector<NodeId> roots);
    [[nodiscard]] std::span<const NodeId> roots() const { return roots_; }

    [[nodiscard]] const Node& node(NodeId id) const { return nodes_.at(index(id)); }
    [[nodiscard]] const HyperEdge& edge(EdgeId id) const { return edges_.at(index(id)); }
    [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] std::span<const EdgeId> out_edges(NodeId id) const { return out_.at(index(id)); }
    /// Standard edges ending at `id`.
    [[nodiscard]] std::span<const EdgeId> in_standard_edges(NodeId id) const { return in_std_.at(index(id)); }
    /// Number of nodes over exactly `agents`.
    [[nodiscard]] std::size_t subgraph_size(AgentSet agents) const;
    [[nodiscard]] std::vector<AgentSet> agent_sets() const;

    [[nodiscard]] GraphStats stats() const;

    /// Line-oriented text dump: `node <id> <agents> <coords...>` and
    /// `edge <source> <targets> <cost> <standard|splitting>`.
    void dump(std::ostream& os) const;

private:
    std::vector<Node> nodes_;
    std::vector<HyperEdge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_std_;
    std::map<std::uint32_t, KdIndex> index_;
    std::vector<NodeId> roots_;
    std::size_t splitting_edges_ = 0;
};

/// Optimal hyperpath: a tree rooted at the graph roots whose leaves satisfy the
/// goal predicate. Steps are listed depth first; `edge` is empty at leaves.
struct HyperPath {
    struct Step {
        NodeId node{};
        std::optional<EdgeId> edge;
    };
    std::vector<Step> steps;
    double total_cost = 0.0;
};

using GoalPredicate = std::function<bool(const BlockConfig&)>;

/// Optimal cost-to-goal of every node (+inf where the goal is unreachable).
std::vector<double> costs_to_goal(const Hypergraph& graph, const GoalPredicate& goal);

std::optional<HyperPath> best_solution(const Hypergraph& graph, const GoalPredicate& goal);

/// Sum of the per-agent Euclidean segment lengths from `from` to the targets.
double transition_cost(const BlockConfig& from, std::span<const BlockConfig* const> targets);
double transition_cost(const BlockConfig& from, const BlockConfig& to);

}  // namespace factplan
