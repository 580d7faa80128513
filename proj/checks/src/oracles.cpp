#include "factplan_checks/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace factplan_checks {

using factplan::AgentSet;
using factplan::EdgeDirection;
using factplan::Vec2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 lerp(std::span<const double> a, std::span<const double> b, double t) {
    return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

}  // namespace

bool dense_collision_free(const Environment& env, const BlockConfig& from, const BlockConfig& to,
                          std::size_t steps) {
    const double r = env.agent_radius();
    const auto& obstacles = env.workspace().obstacles;
    const std::size_t n = from.agent_count();
    std::vector<Vec2> pos(n);
    for (std::size_t s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(steps);
        for (std::size_t k = 0; k < n; ++k) {
            pos[k] = lerp(from.agent_coords_at(k), to.agent_coords_at(k), t);
            for (const auto& o : obstacles) {
                const double dx = std::max({o.lo.x - pos[k].x, 0.0, pos[k].x - o.hi.x});
                const double dy = std::max({o.lo.y - pos[k].y, 0.0, pos[k].y - o.hi.y});
                if (std::hypot(dx, dy) < r) {
                    return false;
                }
            }
            for (std::size_t j = 0; j < k; ++j) {
                if (std::hypot(pos[k].x - pos[j].x, pos[k].y - pos[j].y) < 2.0 * r) {
                    return false;
                }
            }
        }
    }
    return true;
}

double transition_clearance(const Environment& env, const BlockConfig& from, const BlockConfig& to) {
    const double r = env.agent_radius();
    double best = kInf;
    const std::size_t n = from.agent_count();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = factplan::to_vec2(from.agent_coords_at(k));
        const Vec2 b = factplan::to_vec2(to.agent_coords_at(k));
        for (const auto& o : env.workspace().obstacles) {
            best = std::min(best, factplan::segment_rect_distance(a, b, o) - r);
        }
        for (std::size_t j = 0; j < k; ++j) {
            const Vec2 c = factplan::to_vec2(from.agent_coords_at(j));
            const Vec2 d = factplan::to_vec2(to.agent_coords_at(j));
            best = std::min(best, std::sqrt(factplan::min_sq_distance_linear_motion(a, b, c, d)) - 2.0 * r);
        }
    }
    return best;
}

std::vector<NodeId> brute_near(const Hypergraph& g, const BlockConfig& query, double radius) {
    std::vector<NodeId> out;
    const auto q = query.coords();
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const auto& c = g.node(NodeId(i)).config;
        if (c.agents() != query.agents()) {
            continue;
        }
        double sq = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) {
            sq += (c.coords()[k] - q[k]) * (c.coords()[k] - q[k]);
        }
        if (std::sqrt(sq) <= radius) {
            out.push_back(NodeId(i));
        }
    }
    return out;
}

bool RandomHypergraph::is_goal(const BlockConfig& x) const {
    return goal_nodes.count(static_cast<std::size_t>(x.coords()[0])) > 0;
}

RandomHypergraph random_hypergraph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_splitting) {
    const auto pick = [&rng](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    // Dyadic costs keep every sum exact, so optimal costs compare bit for bit.
    const auto cost = [&] { return static_cast<double>(pick(1, 48)) / 16.0; };

    RandomHypergraph h;
    const AgentSet sets[] = {AgentSet{0, 1}, AgentSet{0}, AgentSet{1}};
    const std::size_t n_joint = pick(1, max_nodes - 2 > 6 ? 6 : max_nodes - 2);
    const std::size_t n_a = pick(1, (max_nodes - n_joint) / 2);
    const std::size_t n_b = pick(1, std::min<std::size_t>(max_nodes - n_joint - n_a, 4));
    std::vector<NodeId> by_set[3];
    const std::size_t counts[] = {n_joint, n_a, n_b};
    for (int s = 0; s < 3; ++s) {
        for (std::size_t k = 0; k < counts[s]; ++k) {
            const auto id = static_cast<double>(h.graph.node_count());
            std::vector<double> coords(2 * sets[s].size(), 0.0);
            coords[0] = id;
            by_set[s].push_back(h.graph.add_node(BlockConfig(sets[s], 2, std::move(coords))));
        }
    }
    for (std::size_t i = 0; i < h.graph.node_count(); ++i) {
        if (pick(0, 2) == 0) {
            h.goal_nodes.insert(i);
        }
    }
    for (int s = 0; s < 3; ++s) {
        const auto& ids = by_set[s];
        if (ids.size() < 2) {
            continue;
        }
        const std::size_t edges = pick(0, 2 * ids.size());
        for (std::size_t e = 0; e < edges; ++e) {
            const NodeId a = ids[pick(0, ids.size() - 1)];
            NodeId b = ids[pick(0, ids.size() - 1)];
            if (a == b) {
                continue;
            }
            h.graph.add_hyperedge(a, std::span<const NodeId>(&b, 1), cost(),
                                  pick(0, 1) ? EdgeDirection::both : EdgeDirection::forward_only);
        }
    }
    const std::size_t splits = pick(0, max_splitting);
    for (std::size_t e = 0; e < splits; ++e) {
        const NodeId src = by_set[0][pick(0, n_joint - 1)];
        const NodeId targets[] = {by_set[1][pick(0, n_a - 1)], by_set[2][pick(0, n_b - 1)]};
        h.graph.add_hyperedge(src, targets, cost(), EdgeDirection::forward_only);
    }
    if (pick(0, 4) == 0) {
        h.graph.set_roots({by_set[1][0], by_set[2][0]});
    } else {
        h.graph.set_roots({by_set[0][0]});
    }
    return h;
}

namespace {

double brute_from(const RandomHypergraph& h, NodeId v, std::vector<bool>& on_path) {
    const auto& g = h.graph;
    double best = h.is_goal(g.node(v).config) ? 0.0 : kInf;
    on_path[index(v)] = true;
    for (auto e : g.out_edges(v)) {
        const auto& edge = g.edge(e);
        if (std::any_of(edge.targets.begin(), edge.targets.end(), [&](NodeId t) { return on_path[index(t)]; })) {
            continue;
        }
        double total = edge.cost;
        for (auto t : edge.targets) {
            total += brute_from(h, t, on_path);
        }
        best = std::min(best, total);
    }
    on_path[index(v)] = false;
    return best;
}

}  // namespace

double brute_best_cost(const RandomHypergraph& h) {
    std::vector<bool> on_path(h.graph.node_count(), false);
    double total = 0.0;
    for (auto root : h.graph.roots()) {
        total += brute_from(h, root, on_path);
    }
    return total;
}

double hyperpath_cost(const RandomHypergraph& h, const factplan::HyperPath& path) {
    const auto& g = h.graph;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<NodeId> pending(g.roots().begin(), g.roots().end());
    double total = 0.0;
    for (const auto& step : path.steps) {
        const auto it = std::find(pending.begin(), pending.end(), step.node);
        if (it == pending.end()) {
            return nan;
        }
        pending.erase(it);
        if (!step.edge) {
            if (!h.is_goal(g.node(step.node).config)) {
                return nan;
            }
            continue;
        }
        const auto& edge = g.edge(*step.edge);
        if (edge.source != step.node) {
            return nan;
        }
        total += edge.cost;
        pending.insert(pending.end(), edge.targets.begin(), edge.targets.end());
    }
    return pending.empty() ? total : nan;
}

}  // namespace factplan_checks
