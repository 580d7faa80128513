#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "factplan/environment.hpp"
#include "factplan/hypergraph.hpp"

namespace factplan_checks {

using factplan::BlockConfig;
using factplan::Environment;
using factplan::Hypergraph;
using factplan::NodeId;

/// Collision verdict from evaluating the straight-line motion at steps+1
/// evenly spaced instants.
bool dense_collision_free(const Environment& env, const BlockConfig& from, const BlockConfig& to,
                          std::size_t steps = 10000);

/// Signed clearance of a transition: smallest obstacle gap minus r, or pair gap
/// minus 2r, over the whole motion. Used to carve out the boundary band.
double transition_clearance(const Environment& env, const BlockConfig& from, const BlockConfig& to);

/// Linear-scan neighbours over exactly query.agents(), ascending id.
std::vector<NodeId> brute_near(const Hypergraph& g, const BlockConfig& query, double radius);

/// Small random motion hypergraph over two agents. Node i stores i in its
/// first coordinate so goal membership can be read back from a config.
struct RandomHypergraph {
    Hypergraph graph;
    std::set<std::size_t> goal_nodes;

    [[nodiscard]] bool is_goal(const BlockConfig& x) const;
};

RandomHypergraph random_hypergraph(std::mt19937_64& rng, std::size_t max_nodes = 12,
                                   std::size_t max_splitting = 2);

/// Optimal hyperpath cost by exhaustive recursion over simple paths;
/// +inf if no hyperpath reaches the goal from every root.
double brute_best_cost(const RandomHypergraph& h);

/// Sums the edge costs along a hyperpath and checks its tree shape: every
/// non-leaf step uses an out-edge of its node, every target is expanded once,
/// and every leaf is a goal. Returns NaN on a malformed path.
double hyperpath_cost(const RandomHypergraph& h, const factplan::HyperPath& path);

}  // namespace factplan_checks
