#include "factplan/factorization.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "factplan/errors.hpp"

namespace factplan {

std::shared_ptr<const FutureResources> FactorizationHeuristic::resources(const BlockConfig&) const { return nullptr; }

bool FactorizationHeuristic::coherent(const Node& origin, std::span<const BlockConfig* const>) const {
    if (!origin.resources) {
        throw ContractError("coherency check on a node without future resources");
    }
    return true;
}

Partition factorize(const BlockConfig& x, const FactorizationHeuristic& h) {
    const auto members = x.agents().members();
    const std::size_t n = members.size();
    if (n == 1) {
        return Partition({x});
    }
    std::vector<BlockConfig> singles;
    singles.reserve(n);
    for (auto id : members) {
        singles.push_back(project(x, AgentSet::single(id)));
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&parent](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) {
                continue;
            }
            if (!h.independent(singles[i], singles[j])) {
                parent[find(j)] = find(i);
            }
        }
    }

    std::vector<AgentSet> components(n);
    for (std::size_t i = 0; i < n; ++i) {
        components[find(i)] = components[find(i)] | AgentSet::single(members[i]);
    }
    std::vector<BlockConfig> blocks;
    for (auto c : components) {
        if (!c.empty()) {
            blocks.push_back(project(x, c));
        }
    }
    return Partition(std::move(blocks));
}

Cone make_cone(Vec2 position, const Rect& goal, const Rect& bounds, double half_angle) {
    if (!(half_angle > 0.0 && half_angle <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument("cone half-angle must lie in (0, pi/2]");
    }
    Cone cone;
    cone.apex = position;
    cone.half_angle = half_angle;
    const Vec2 target = goal.center();
    const Vec2 v = target - position;
    const double dist = norm(v);
    if (dist < 1e-12) {
        // Sitting on the goal centre: circumscribe the disc that covers the goal region.
        constexpr int kSides = 16;
        const double radius = goal.half_diagonal() / std::cos(std::numbers::pi / kSides);
        cone.degenerate = true;
        cone.length = goal.half_diagonal();
        for (int k = 0; k < kSides; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / kSides;
            cone.region.push_back(target + radius * Vec2{std::cos(phi), std::sin(phi)});
        }
        cone.region = clip_to_rect(cone.region, bounds);
        return cone;
    }
    cone.axis = (1.0 / dist) * v;
    cone.length = dist + goal.half_diagonal();
    const Vec2 perp{-cone.axis.y, cone.axis.x};
    const Vec2 tip = position + cone.length * cone.axis;
    if (half_angle >= std::numbers::pi / 2.0 - 1e-12) {
        // Half-plane slab; the side length only has to exceed the workspace.
        const double side = 4.0 * (bounds.width() + bounds.height());
        cone.region = {position - side * perp, tip - side * perp, tip + side * perp, position + side * perp};
    } else {
        const double w = cone.length * std::tan(half_angle);
        cone.region = {position, tip - w * perp, tip + w * perp};
    }
    cone.region = clip_to_rect(cone.region, bounds);
    return cone;
}

ConeHeuristic::ConeHeuristic(const Environment& env, double half_angle) : env_(&env), half_angle_(half_angle) {
    if (!(half_angle > 0.0 && half_angle <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument("cone half-angle must lie in (0, pi/2]");
    }
}

Cone ConeHeuristic::cone_region(AgentId agent, Vec2 position) const {
    return make_cone(position, env_->goal(agent), env_->workspace().bounds, half_angle_);
}

bool ConeHeuristic::cone_pairwise(const BlockConfig& a, const BlockConfig& b) const {
    if (a.agents().intersects(b.agents())) {
        throw StructuralError("independence is only defined for disjoint agent sets");
    }
    const double clearance = 2.0 * env_->agent_radius();
    const auto members_a = a.agents().members();
    const auto members_b = b.agents().members();
    std::vector<Cone> cones_b;
    cones_b.reserve(members_b.size());
    for (std::size_t k = 0; k < members_b.size(); ++k) {
        cones_b.push_back(cone_region(members_b[k], to_vec2(b.agent_coords_at(k))));
    }
    for (std::size_t k = 0; k < members_a.size(); ++k) {
        const Cone ca = cone_region(members_a[k], to_vec2(a.agent_coords_at(k)));
        for (const auto& cb : cones_b) {
            if (!(polygon_distance(ca.region, cb.region) > clearance)) {
                return false;
            }
        }
    }
    return true;
}

std::shared_ptr<const FutureResources> ConeHeuristic::resources(const BlockConfig& x) const {
    auto cones = std::make_shared<FutureResources>();
    const auto members = x.agents().members();
    cones->reserve(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        cones->push_back(cone_region(members[k], to_vec2(x.agent_coords_at(k))));
    }
    return cones;
}

bool ConeHeuristic::coherent(const Node& origin, std::span<const BlockConfig* const> destinations) const {
    if (!origin.resources) {
        throw ContractError("coherency check on a node without future resources");
    }
    const AgentSet origin_agents = origin.config.agents();
    for (const BlockConfig* dest : destinations) {
        const auto members = dest->agents().members();
        for (std::size_t k = 0; k < members.size(); ++k) {
            const AgentId id = members[k];
            const Cone& parent = (*origin.resources).at(origin_agents.rank_of(id));
            const Vec2 p = to_vec2(dest->agent_coords_at(k));
            if (!parent.contains(p)) {
                return false;
            }
            // The child's own cone must still reach the goal inside the parent's cone.
            const Vec2 goal_center = env_->goal(id).center();
            if (!parent.contains(goal_center) || !cone_region(id, p).contains(goal_center)) {
                return false;
            }
        }
    }
    return true;
}

StraightLineOracle::StraightLineOracle(const Environment& env) : env_(&env) {
    if (env.has_obstacles()) {
        throw ContractError("straight-line factorization oracle requires an obstacle-free workspace");
    }
}

bool StraightLineOracle::independent(const BlockConfig& a, const BlockConfig& b) const {
    if (a.agents().intersects(b.agents())) {
        throw StructuralError("independence is only defined for disjoint agent sets");
    }
    const double limit = 2.0 * env_->agent_radius();
    const auto members_a = a.agents().members();
    const auto members_b = b.agents().members();
    for (std::size_t i = 0; i < members_a.size(); ++i) {
        const Vec2 p0 = to_vec2(a.agent_coords_at(i));
        const Vec2 p1 = env_->goal(members_a[i]).clamp(p0);
        for (std::size_t j = 0; j < members_b.size(); ++j) {
            const Vec2 q0 = to_vec2(b.agent_coords_at(j));
            const Vec2 q1 = env_->goal(members_b[j]).clamp(q0);
            if (min_sq_distance_linear_motion(p0, p1, q0, q1) < limit * limit) {
                return false;
            }
        }
    }
    return true;
}

std::unique_ptr<FactorizationHeuristic> never_factorize() { return std::make_unique<NeverFactorize>(); }

std::unique_ptr<FactorizationHeuristic> full_factorize_oracle(const Environment& env) {
    return std::make_unique<StraightLineOracle>(env);
}

std::unique_ptr<FactorizationHeuristic> make_heuristic(std::string_view name, const Environment& env,
                                                       double cone_half_angle) {
    if (name == "never") {
        return never_factorize();
    }
    if (name == "cone") {
        return std::make_unique<ConeHeuristic>(env, cone_half_angle);
    }
    throw std::invalid_argument("unknown factorization heuristic '" + std::string(name) + "'");
}

}  // namespace factplan
