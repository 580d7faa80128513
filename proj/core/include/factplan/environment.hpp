#pragma once

#include <cstddef>
#include <vector>

#include "factplan/agents.hpp"
#include "factplan/geometry.hpp"
#include "factplan/rng.hpp"

namespace factplan {

/// Planar workspace normalized to the unit box, populated by disc robots of a
/// single shared radius.
struct Workspace {
    Rect bounds{{0.0, 0.0}, {1.0, 1.0}};
    std::vector<Rect> obstacles;
    double agent_radius = 0.05;
};

/// Straight-line joint motion: every agent interpolates linearly from `from`
/// to `to` over the same parameter tau in [0, 1].
class Transition {
public:
    Transition(const BlockConfig& from, const BlockConfig& to);

    [[nodiscard]] const BlockConfig& from() const { return *from_; }
    [[nodiscard]] const BlockConfig& to() const { return *to_; }
    [[nodiscard]] Transition reversed() const { return {*to_, *from_}; }

private:
    const BlockConfig* from_;
    const BlockConfig* to_;
};

class Environment {
public:
    static constexpr std::size_t kAgentDim = 2;
    static constexpr int kMaxRejections = 100000;

    /// `goals[i]` is the goal region of agent i.
    Environment(Workspace workspace, std::vector<Rect> goals);

    [[nodiscard]] const Workspace& workspace() const { return workspace_; }
    [[nodiscard]] std::size_t agent_count() const { return goals_.size(); }
    [[nodiscard]] AgentSet all_agents() const { return AgentSet::first(goals_.size()); }
    [[nodiscard]] const Rect& goal(AgentId id) const { return goals_.at(id.index); }
    [[nodiscard]] double agent_radius() const { return workspace_.agent_radius; }
    [[nodiscard]] bool has_obstacles() const { return !workspace_.obstacles.empty(); }

    /// Disc centred at `p` does not penetrate any obstacle (contact allowed).
    [[nodiscard]] bool point_free(Vec2 p) const;

    /// Smallest distance from the segment to any obstacle, +inf without obstacles.
    [[nodiscard]] double obstacle_clearance(Vec2 a, Vec2 b) const;

    /// Smallest centre-to-centre distance between any two agents over the motion,
    /// +inf for single-agent transitions.
    [[nodiscard]] double min_pair_separation(const Transition& t) const;

    [[nodiscard]] bool segment_obstacle_free(const Transition& t) const;
    [[nodiscard]] bool agents_collision_free(const Transition& t) const;
    [[nodiscard]] bool collision_free(const BlockConfig& from, const BlockConfig& to) const;

    /// Every agent of `x` lies in the closure of its own goal region.
    [[nodiscard]] bool in_goal(const BlockConfig& x) const;

    /// Joint sample over all agents. With probability `goal_bias` every agent is
    /// drawn inside its goal region, otherwise over the workspace; each agent is
    /// redrawn until its disc is obstacle-free.
    [[nodiscard]] BlockConfig sample_free(SampleStream& rng, double goal_bias) const;

private:
    Workspace workspace_;
    std::vector<Rect> goals_;
};

}  // namespace factplan
