#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "factplan/agents.hpp"
#include "factplan/cone.hpp"
#include "factplan/environment.hpp"
#include "factplan/hypergraph.hpp"

namespace factplan {

/// A cheap predicate whose `true` answer certifies that two disjoint agent
/// groups can be planned for independently from the given configuration.
///
/// Implementations must keep `independent` symmetric. Heuristics that attach
/// future resources to nodes also constrain which edges the planner may add
/// (`coherent`).
class FactorizationHeuristic {
public:
    virtual ~FactorizationHeuristic() = default;

    [[nodiscard]] virtual std::string_view name() const = 0;

    /// Disjoint blocks `a` and `b` are independent. Multi-agent blocks pass only
    /// if every cross pair of agents does.
    [[nodiscard]] virtual bool independent(const BlockConfig& a, const BlockConfig& b) const = 0;

    /// Future-resource regions for a node at `x`, or null if the heuristic
    /// imposes no coherency constraint.
    [[nodiscard]] virtual std::shared_ptr<const FutureResources> resources(const BlockConfig& x) const;

    /// Whether an edge from `origin` to `destinations` respects the origin's
    /// future resources. Throws ContractError when the origin has none.
    [[nodiscard]] virtual bool coherent(const Node& origin, std::span<const BlockConfig* const> destinations) const;
};

/// Blocks are the connected components of the dependence graph over the agents
/// of `x` (edge i-j iff agents i and j are not independent).
Partition factorize(const BlockConfig& x, const FactorizationHeuristic& h);

/// Never declares independence; the factorized planner degenerates to the
/// joint-space planner.
class NeverFactorize final : public FactorizationHeuristic {
public:
    [[nodiscard]] std::string_view name() const override { return "never"; }
    [[nodiscard]] bool independent(const BlockConfig&, const BlockConfig&) const override { return false; }
};

/// Goal-cone heuristic: agents whose (clipped) cones stay more than
/// 2 * agent_radius apart are independent. Nodes carry their cones as future
/// resources.
class ConeHeuristic final : public FactorizationHeuristic {
public:
    explicit ConeHeuristic(const Environment& env, double half_angle = kDefaultConeHalfAngle);

    [[nodiscard]] std::string_view name() const override { return "cone"; }
    [[nodiscard]] double half_angle() const { return half_angle_; }

    [[nodiscard]] Cone cone_region(AgentId agent, Vec2 position) const;
    [[nodiscard]] bool cone_pairwise(const BlockConfig& a, const BlockConfig& b) const;

    [[nodiscard]] bool independent(const BlockConfig& a, const BlockConfig& b) const override {
        return cone_pairwise(a, b);
    }
    [[nodiscard]] std::shared_ptr<const FutureResources> resources(const BlockConfig& x) const override;
    [[nodiscard]] bool coherent(const Node& origin, std::span<const BlockConfig* const> destinations) const override;

private:
    const Environment* env_;
    double half_angle_;
};

/// Test-only oracle for obstacle-free workspaces, where each agent's optimal
/// path is the straight segment to the nearest point of its goal region. Two
/// agents are independent iff those segments, traversed simultaneously, keep
/// the discs apart. Throws ContractError if the workspace has obstacles.
class StraightLineOracle final : public FactorizationHeuristic {
public:
    explicit StraightLineOracle(const Environment& env);

    [[nodiscard]] std::string_view name() const override { return "straight-line-oracle"; }
    [[nodiscard]] bool independent(const BlockConfig& a, const BlockConfig& b) const override;

private:
    const Environment* env_;
};

std::unique_ptr<FactorizationHeuristic> never_factorize();
std::unique_ptr<FactorizationHeuristic> full_factorize_oracle(const Environment& env);

/// Builds a heuristic by name ("never" or "cone").
std::unique_ptr<FactorizationHeuristic> make_heuristic(std::string_view name, const Environment& env,
                                                       double cone_half_angle = kDefaultConeHalfAngle);

}  // namespace factplan
