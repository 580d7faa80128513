#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "factplan/errors.hpp"
#include "factplan/hypergraph.hpp"
#include "factplan_checks/oracles.hpp"

using namespace factplan;

namespace {

BlockConfig at(AgentSet agents, std::vector<double> xy) { return BlockConfig(agents, 2, std::move(xy)); }

// Goal: every coordinate at least 0.9.
bool high(const BlockConfig& x) {
    for (double c : x.coords()) {
        if (c < 0.9) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(ConnectionRadius, Values) {
    EXPECT_DOUBLE_EQ(connection_radius(0, 2), 100.0);
    EXPECT_DOUBLE_EQ(connection_radius(1, 2), 100.0);
    EXPECT_NEAR(connection_radius(100, 2), 100.0 * std::sqrt(std::log(100.0) / 100.0), 1e-12);
    EXPECT_NEAR(connection_radius(100, 2), 21.46, 5e-3);
    EXPECT_DOUBLE_EQ(connection_radius(3, 2, 100.0, 0.5), 0.5);
    EXPECT_THROW(connection_radius(10, 0), std::invalid_argument);
}

TEST(Hypergraph, NodeIdsAndSeparateIndices) {
    Hypergraph g;
    EXPECT_TRUE(g.near(at(AgentSet{0}, {0, 0}), 1.0).empty());
    const auto a = g.add_node(at(AgentSet{0}, {0.1, 0.1}));
    const auto b = g.add_node(at(AgentSet{1}, {0.1, 0.1}));
    EXPECT_EQ(index(a), 0u);
    EXPECT_EQ(index(b), 1u);
    EXPECT_EQ(g.subgraph_size(AgentSet{0}), 1u);
    EXPECT_EQ(g.subgraph_size(AgentSet{1}), 1u);
    // Same position, different agent set: excluded.
    const auto hits = g.near(at(AgentSet{0}, {0.1, 0.1}), 0.0);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(hits[0], a);
    EXPECT_THROW(g.near(at(AgentSet{0}, {0, 0}), -1.0), std::invalid_argument);
}

TEST(Hypergraph, NearMatchesLinearScan) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Hypergraph g;
    const AgentSet sets[] = {AgentSet{0}, AgentSet{0, 1}, AgentSet{1, 2}};
    for (int i = 0; i < 500; ++i) {
        const AgentSet s = sets[i % 3];
        std::vector<double> xy(2 * s.size());
        for (auto& v : xy) v = u(rng);
        g.add_node(at(s, xy));
    }
    for (int q = 0; q < 200; ++q) {
        const AgentSet s = sets[q % 3];
        std::vector<double> xy(2 * s.size());
        for (auto& v : xy) v = u(rng);
        const auto query = at(s, xy);
        const double radius = q % 10 == 0 ? std::numeric_limits<double>::infinity() : 0.6 * u(rng);
        ASSERT_EQ(g.near(query, radius), factplan_checks::brute_near(g, query, radius));
    }
    EXPECT_EQ(g.near(at(AgentSet{0, 1}, {0, 0, 0, 0}), std::numeric_limits<double>::infinity()).size(),
              g.subgraph_size(AgentSet{0, 1}));
}

TEST(Hypergraph, StandardEdgeIsUndirected) {
    Hypergraph g;
    const auto a = g.add_node(at(AgentSet{0}, {0, 0}));
    const auto b = g.add_node(at(AgentSet{0}, {0.3, 0.4}));
    const std::vector<NodeId> t{b};
    g.add_hyperedge(a, t, 0.5);
    ASSERT_EQ(g.out_edges(a).size(), 1u);
    ASSERT_EQ(g.out_edges(b).size(), 1u);
    EXPECT_EQ(g.edge(g.out_edges(b)[0]).targets[0], a);
    const auto s = g.stats();
    EXPECT_EQ(s.nodes, 2u);
    EXPECT_EQ(s.edges, 2u);
    EXPECT_EQ(s.splitting_edges, 0u);
}

TEST(Hypergraph, EmptyStats) {
    const Hypergraph g;
    const auto s = g.stats();
    EXPECT_EQ(s.nodes, 0u);
    EXPECT_EQ(s.edges, 0u);
    EXPECT_EQ(s.splitting_edges, 0u);
    EXPECT_TRUE(s.nodes_per_agent_set.empty());
}

TEST(Hypergraph, SplittingEdgeInvariants) {
    Hypergraph g;
    const auto src = g.add_node(at(AgentSet{0, 1, 2}, {0, 0, 0.5, 0.5, 1, 1}));
    const auto n12 = g.add_node(at(AgentSet{0, 1}, {0, 0, 0.5, 0.5}));
    const auto n3 = g.add_node(at(AgentSet{2}, {1, 1}));
    const auto n23 = g.add_node(at(AgentSet{1, 2}, {0.5, 0.5, 1, 1}));
    const auto n1 = g.add_node(at(AgentSet{0}, {0, 0}));
    const std::vector<NodeId> ok{n12, n3};
    const std::vector<NodeId> overlap{n12, n23};
    const std::vector<NodeId> partial{n1, n3};
    EXPECT_NO_THROW(g.add_hyperedge(src, ok, 0.0, EdgeDirection::forward_only));
    EXPECT_THROW(g.add_hyperedge(src, overlap, 0.0, EdgeDirection::forward_only), StructuralError);
    EXPECT_THROW(g.add_hyperedge(src, partial, 0.0, EdgeDirection::forward_only), StructuralError);
    const std::vector<NodeId> self{src};
    EXPECT_THROW(g.add_hyperedge(src, self, -1.0), StructuralError);
    EXPECT_THROW(g.add_hyperedge(src, self, std::nan("")), StructuralError);
    const auto s = g.stats();
    EXPECT_EQ(s.edges, 1u);
    EXPECT_EQ(s.splitting_edges, 1u);
    EXPECT_EQ(s.nodes_per_agent_set.at(AgentSet{0, 1}.mask()), 1u);
}

TEST(Hypergraph, TransitionCostSumsAgentSegments) {
    const auto from = at(AgentSet{0, 1}, {0, 0, 1, 1});
    const auto a = at(AgentSet{0}, {0.3, 0.4});
    const auto b = at(AgentSet{1}, {1, 0});
    const BlockConfig* targets[] = {&a, &b};
    EXPECT_DOUBLE_EQ(transition_cost(from, targets), 1.5);
    EXPECT_DOUBLE_EQ(transition_cost(from, at(AgentSet{0, 1}, {0.3, 0.4, 1, 0})), 1.5);
}

TEST(BestSolution, Chain) {
    Hypergraph g;
    const auto x0 = g.add_node(at(AgentSet{0}, {0, 0}));
    const auto x1 = g.add_node(at(AgentSet{0}, {0.5, 0.5}));
    const auto x2 = g.add_node(at(AgentSet{0}, {1, 1}));
    const std::vector<NodeId> t1{x1}, t2{x2};
    g.add_hyperedge(x0, t1, 1.0);
    g.add_hyperedge(x1, t2, 2.0);
    g.set_roots({x0});
    const auto sol = best_solution(g, high);
    ASSERT_TRUE(sol);
    EXPECT_DOUBLE_EQ(sol->total_cost, 3.0);
    ASSERT_EQ(sol->steps.size(), 3u);
    EXPECT_EQ(sol->steps.front().node, x0);
    EXPECT_FALSE(sol->steps.back().edge);
    const auto c = costs_to_goal(g, high);
    EXPECT_DOUBLE_EQ(c[index(x1)], 2.0);
    EXPECT_DOUBLE_EQ(c[index(x2)], 0.0);
}

TEST(BestSolution, SplittingEdgeSumsBranches) {
    Hypergraph g;
    const auto s = g.add_node(at(AgentSet{0, 1}, {0, 0, 0, 0}));
    const auto a = g.add_node(at(AgentSet{0}, {0, 0}));
    const auto b = g.add_node(at(AgentSet{1}, {0, 0}));
    const auto ga = g.add_node(at(AgentSet{0}, {1, 1}));
    const auto gb = g.add_node(at(AgentSet{1}, {1, 1}));
    const std::vector<NodeId> split{a, b}, ta{ga}, tb{gb};
    g.add_hyperedge(s, split, 1.0, EdgeDirection::forward_only);
    g.add_hyperedge(a, ta, 2.0);
    g.add_hyperedge(b, tb, 3.0);
    g.set_roots({s});
    const auto sol = best_solution(g, high);
    ASSERT_TRUE(sol);
    EXPECT_DOUBLE_EQ(sol->total_cost, 6.0);
    EXPECT_EQ(sol->steps.size(), 5u);
}

TEST(BestSolution, NoneWithoutGoalOrRoots) {
    Hypergraph g;
    const auto x0 = g.add_node(at(AgentSet{0}, {0, 0}));
    EXPECT_FALSE(best_solution(g, high));
    g.set_roots({x0});
    EXPECT_FALSE(best_solution(g, high));
    EXPECT_TRUE(std::isinf(costs_to_goal(g, high)[0]));
}

TEST(BestSolution, MatchesExhaustiveEnumeration) {
    std::mt19937_64 rng(2024);
    int solvable = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto h = factplan_checks::random_hypergraph(rng);
        const auto goal = [&h](const BlockConfig& x) { return h.is_goal(x); };
        const double expected = factplan_checks::brute_best_cost(h);
        const auto sol = best_solution(h.graph, goal);
        if (std::isinf(expected)) {
            EXPECT_FALSE(sol) << trial;
            continue;
        }
        ++solvable;
        ASSERT_TRUE(sol) << trial;
        EXPECT_EQ(sol->total_cost, expected) << trial;
        EXPECT_EQ(factplan_checks::hyperpath_cost(h, *sol), expected) << trial;
    }
    EXPECT_GT(solvable, 50);
}

TEST(Hypergraph, DumpFormat) {
    Hypergraph g;
    const auto s = g.add_node(at(AgentSet{0, 1}, {0, 0.5, 1, 0.25}));
    const auto a = g.add_node(at(AgentSet{0}, {0, 0.5}));
    const auto b = g.add_node(at(AgentSet{1}, {1, 0.25}));
    const std::vector<NodeId> split{a, b};
    g.add_hyperedge(s, split, 0.0, EdgeDirection::forward_only);
    std::ostringstream os;
    g.dump(os);
    EXPECT_EQ(os.str(),
              "# factplan graph dump v1\n"
              "node 0 0,1 0 0.5 1 0.25\n"
              "node 1 0 0 0.5\n"
              "node 2 1 1 0.25\n"
              "edge 0 1,2 0 splitting\n");
}
