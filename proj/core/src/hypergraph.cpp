#include "factplan/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "factplan/errors.hpp"

namespace factplan {

double connection_radius(std::size_t n, std::size_t d, double gamma, double eta) {
    if (d == 0) {
        throw std::invalid_argument("connection radius needs a positive dimension");
    }
    if (n <= 1) {
        return eta;
    }
    const double nn = static_cast<double>(n);
    return std::min(gamma * std::pow(std::log(nn) / nn, 1.0 / static_cast<double>(d)), eta);
}

NodeId Hypergraph::add_node(BlockConfig config, std::shared_ptr<const FutureResources> resources,
                            std::uint64_t iteration) {
    const auto id = static_cast<NodeId>(nodes_.size());
    auto [it, inserted] = index_.try_emplace(config.agents().mask(), config.coords().size());
    it->second.insert(config.coords(), static_cast<std::uint32_t>(id));
    nodes_.push_back(Node{std::move(config), std::move(resources), iteration});
    out_.emplace_back();
    in_std_.emplace_back();
    return id;
}

std::vector<NodeId> Hypergraph::near(const BlockConfig& query, double radius) const {
    if (radius < 0.0) {
        throw std::invalid_argument("near() radius must be non-negative");
    }
    std::vector<NodeId> out;
    auto it = index_.find(query.agents().mask());
    if (it == index_.end()) {
        return out;
    }
    std::vector<std::uint32_t> raw;
    it->second.radius_query(query.coords(), radius, raw);
    std::sort(raw.begin(), raw.end());
    out.reserve(raw.size());
    for (auto r : raw) {
        out.push_back(static_cast<NodeId>(r));
    }
    return out;
}

EdgeId Hypergraph::add_hyperedge(NodeId source, std::span<const NodeId> targets, double cost,
                                 EdgeDirection direction) {
    if (index(source) >= nodes_.size()) {
        throw StructuralError("hyperedge source does not exist");
    }
    if (targets.empty()) {
        throw StructuralError("hyperedge needs at least one target");
    }
    if (!(cost >= 0.0) || !std::isfinite(cost)) {
        throw StructuralError("hyperedge cost must be finite and non-negative");
    }
    const AgentSet source_agents = nodes_[index(source)].config.agents();
    AgentSet covered;
    for (auto t : targets) {
        if (index(t) >= nodes_.size()) {
            throw StructuralError("hyperedge target does not exist");
        }
        const AgentSet a = nodes_[index(t)].config.agents();
        if (covered.intersects(a)) {
            throw StructuralError("hyperedge targets overlap on " + (covered & a).to_string());
        }
        covered = covered | a;
    }
    if (covered != source_agents) {
        throw StructuralError("hyperedge targets cover " + covered.to_string() + " but source holds " +
                              source_agents.to_string());
    }

    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(HyperEdge{source, std::vector<NodeId>(targets.begin(), targets.end()), cost});
    out_[index(source)].push_back(id);
    if (targets.size() > 1) {
        ++splitting_edges_;
        return id;
    }
    in_std_[index(targets.front())].push_back(id);
    if (direction == EdgeDirection::both) {
        const auto rev = static_cast<EdgeId>(edges_.size());
        edges_.push_back(HyperEdge{targets.front(), {source}, cost});
        out_[index(targets.front())].push_back(rev);
        in_std_[index(source)].push_back(rev);
    }
    return id;
}

void Hypergraph::set_roots(std::vector<NodeId> roots) {
    AgentSet covered;
    for (auto r : roots) {
        const AgentSet a = node(r).config.agents();
        if (covered.intersects(a)) {
            throw StructuralError("root nodes overlap on " + (covered & a).to_string());
        }
        covered = covered | a;
    }
    roots_ = std::move(roots);
}

std::size_t Hypergraph::subgraph_size(AgentSet agents) const {
    auto it = index_.find(agents.mask());
    return it == index_.end() ? 0 : it->second.size();
}

std::vector<AgentSet> Hypergraph::agent_sets() const {
    std::vector<AgentSet> out;
    out.reserve(index_.size());
    for (const auto& [mask, idx] : index_) {
        out.push_back(AgentSet::from_mask(mask));
    }
    return out;
}

GraphStats Hypergraph::stats() const {
    GraphStats s;
    s.nodes = nodes_.size();
    s.edges = edges_.size();
    s.splitting_edges = splitting_edges_;
    for (const auto& [mask, idx] : index_) {
        s.nodes_per_agent_set[mask] = idx.size();
    }
    return s;
}

void Hypergraph::dump(std::ostream& os) const {
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const auto agents_csv = [](AgentSet a) {
        std::string s;
        for (auto id : a.members()) {
            if (!s.empty()) {
                s += ',';
            }
            s += std::to_string(id.index);
        }
        return s;
    };
    os << "# factplan graph dump v1\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        os << "node " << i << ' ' << agents_csv(nodes_[i].config.agents());
        for (double c : nodes_[i].config.coords()) {
            os << ' ' << num(c);
        }
        os << '\n';
    }
    for (const auto& e : edges_) {
        os << "edge " << index(e.source) << ' ';
        for (std::size_t k = 0; k < e.targets.size(); ++k) {
            os << (k ? "," : "") << index(e.targets[k]);
        }
        os << ' ' << num(e.cost) << ' ' << (e.splitting() ? "splitting" : "standard") << '\n';
    }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DpResult {
    std::vector<double> cost;
    // Chosen outgoing edge per node; empty means the node is a goal leaf.
    std::vector<std::optional<EdgeId>> choice;
};

DpResult solve(const Hypergraph& g, const GoalPredicate& goal) {
    const std::size_t n = g.node_count();
    DpResult r{std::vector<double>(n, kInf), std::vector<std::optional<EdgeId>>(n)};

    std::vector<std::vector<NodeId>> by_set;
    {
        std::map<std::uint32_t, std::size_t> slot;
        auto sets = g.agent_sets();
        // Most refined first: splitting edges only ever point to smaller agent sets.
        std::sort(sets.begin(), sets.end(), [](AgentSet a, AgentSet b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        for (auto s : sets) {
            slot[s.mask()] = by_set.size();
            by_set.emplace_back();
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto id = static_cast<NodeId>(i);
            by_set[slot.at(g.node(id).config.agents().mask())].push_back(id);
        }
    }

    using Entry = std::pair<double, std::uint32_t>;
    for (const auto& members : by_set) {
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        for (auto u : members) {
            double best = goal(g.node(u).config) ? 0.0 : kInf;
            std::optional<EdgeId> pick;
            if (best > 0.0) {
                for (auto e : g.out_edges(u)) {
                    const HyperEdge& he = g.edge(e);
                    if (!he.splitting()) {
                        continue;
                    }
                    double v = he.cost;
                    for (auto t : he.targets) {
                        v += r.cost[index(t)];
                    }
                    if (v < best) {
                        best = v;
                        pick = e;
                    }
                }
            }
            r.cost[index(u)] = best;
            r.choice[index(u)] = pick;
            if (best < kInf) {
                queue.emplace(best, static_cast<std::uint32_t>(u));
            }
        }
        // Backward Dijkstra over the standard edges of this block.
        while (!queue.empty()) {
            const auto [d, raw] = queue.top();
            queue.pop();
            const auto u = static_cast<NodeId>(raw);
            if (d > r.cost[index(u)]) {
                continue;
            }
            for (auto e : g.in_standard_edges(u)) {
                const HyperEdge& he = g.edge(e);
                const double cand = d + he.cost;
                const std::size_t v = index(he.source);
                if (cand < r.cost[v]) {
                    r.cost[v] = cand;
                    r.choice[v] = e;
                    queue.emplace(cand, static_cast<std::uint32_t>(v));
                }
            }
        }
    }
    return r;
}

}  // namespace

std::vector<double> costs_to_goal(const Hypergraph& graph, const GoalPredicate& goal) {
    return solve(graph, goal).cost;
}

std::optional<HyperPath> best_solution(const Hypergraph& graph, const GoalPredicate& goal) {
    if (graph.roots().empty()) {
        return std::nullopt;
    }
    const DpResult dp = solve(graph, goal);
    HyperPath path;
    for (auto root : graph.roots()) {
        if (!(dp.cost[index(root)] < kInf)) {
            return std::nullopt;
        }
        path.total_cost += dp.cost[index(root)];
    }
    std::vector<NodeId> stack(graph.roots().rbegin(), graph.roots().rend());
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        const auto pick = dp.choice[index(u)];
        path.steps.push_back({u, pick});
        if (!pick) {
            continue;
        }
        const auto& targets = graph.edge(*pick).targets;
        stack.insert(stack.end(), targets.rbegin(), targets.rend());
    }
    return path;
}

double transition_cost(const BlockConfig& from, std::span<const BlockConfig* const> targets) {
    double total = 0.0;
    for (const BlockConfig* t : targets) {
        for (auto id : t->agents().members()) {
            const auto a = from.agent_coords(id);
            const auto b = t->agent_coords(id);
            double sq = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double diff = b[k] - a[k];
                sq += diff * diff;
            }
            total += std::sqrt(sq);
        }
    }
    return total;
}

double transition_cost(const BlockConfig& from, const BlockConfig& to) {
    const BlockConfig* targets[] = {&to};
    return transition_cost(from, targets);
}

}  // namespace factplan
