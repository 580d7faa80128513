#include "factplan/environment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "factplan/errors.hpp"

namespace factplan {

namespace {

// Both collision predicates are evaluated on a canonical orientation of the
// transition so that checking from->to and to->from is bit-identical.
bool lexicographically_less(std::span<const double> a, std::span<const double> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Transition::Transition(const BlockConfig& from, const BlockConfig& to) : from_(&from), to_(&to) {
    if (from.agents() != to.agents() || from.dim() != to.dim()) {
        throw StructuralError("transition between " + from.agents().to_string() + " and " + to.agents().to_string());
    }
}

Environment::Environment(Workspace workspace, std::vector<Rect> goals)
    : workspace_(std::move(workspace)), goals_(std::move(goals)) {
    if (!(workspace_.agent_radius > 0.0)) {
        throw std::invalid_argument("agent radius must be positive");
    }
    if (goals_.empty() || goals_.size() > AgentSet::kMaxAgents) {
        throw std::invalid_argument("environment needs between 1 and 32 agents");
    }
    for (const auto& g : goals_) {
        if (!g.valid()) {
            throw std::invalid_argument("goal region must have positive area");
        }
    }
}

bool Environment::point_free(Vec2 p) const {
    const double r = workspace_.agent_radius;
    return std::all_of(workspace_.obstacles.begin(), workspace_.obstacles.end(),
                       [&](const Rect& o) { return !(o.distance_to(p) < r); });
}

double Environment::obstacle_clearance(Vec2 a, Vec2 b) const {
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) {
        std::swap(a, b);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : workspace_.obstacles) {
        best = std::min(best, segment_rect_distance(a, b, o));
    }
    return best;
}

bool Environment::segment_obstacle_free(const Transition& t) const {
    const double r = workspace_.agent_radius;
    const std::size_t n = t.from().agent_count();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = to_vec2(t.from().agent_coords_at(k));
        const Vec2 b = to_vec2(t.to().agent_coords_at(k));
        if (obstacle_clearance(a, b) < r) {
            return false;
        }
    }
    return true;
}

double Environment::min_pair_separation(const Transition& t) const {
    const bool flip = lexicographically_less(t.to().coords(), t.from().coords());
    const BlockConfig& from = flip ? t.to() : t.from();
    const BlockConfig& to = flip ? t.from() : t.to();
    const std::size_t n = from.agent_count();
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p0 = to_vec2(from.agent_coords_at(i));
        const Vec2 p1 = to_vec2(to.agent_coords_at(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 q0 = to_vec2(from.agent_coords_at(j));
            const Vec2 q1 = to_vec2(to.agent_coords_at(j));
            best_sq = std::min(best_sq, min_sq_distance_linear_motion(p0, p1, q0, q1));
        }
    }
    return std::sqrt(best_sq);
}

bool Environment::agents_collision_free(const Transition& t) const {
    if (t.from().agent_count() < 2) {
        return true;
    }
    const bool flip = lexicographically_less(t.to().coords(), t.from().coords());
    const BlockConfig& from = flip ? t.to() : t.from();
    const BlockConfig& to = flip ? t.from() : t.to();
    const double limit = 2.0 * workspace_.agent_radius;
    const double limit_sq = limit * limit;
    const std::size_t n = from.agent_count();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p0 = to_vec2(from.agent_coords_at(i));
        const Vec2 p1 = to_vec2(to.agent_coords_at(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 q0 = to_vec2(from.agent_coords_at(j));
            const Vec2 q1 = to_vec2(to.agent_coords_at(j));
            if (min_sq_distance_linear_motion(p0, p1, q0, q1) < limit_sq) {
                return false;
            }
        }
    }
    return true;
}

bool Environment::collision_free(const BlockConfig& from, const BlockConfig& to) const {
    const Transition t(from, to);
    return segment_obstacle_free(t) && agents_collision_free(t);
}

bool Environment::in_goal(const BlockConfig& x) const {
    for (auto id : x.agents().members()) {
        if (!goal(id).contains(to_vec2(x.agent_coords(id)))) {
            return false;
        }
    }
    return true;
}

BlockConfig Environment::sample_free(SampleStream& rng, double goal_bias) const {
    if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) {
        throw std::invalid_argument("goal bias must lie in [0, 1]");
    }
    const bool toward_goal = rng.uniform() < goal_bias;
    std::vector<double> coords;
    coords.reserve(kAgentDim * agent_count());
    for (std::size_t i = 0; i < agent_count(); ++i) {
        const Rect& box = toward_goal ? goals_[i] : workspace_.bounds;
        int attempts = 0;
        Vec2 p;
        do {
            if (++attempts > kMaxRejections) {
                throw SamplingError("no obstacle-free sample for agent " + std::to_string(i) + " after " +
                                    std::to_string(kMaxRejections) + " draws");
            }
            p.x = rng.uniform(box.lo.x, box.hi.x);
            p.y = rng.uniform(box.lo.y, box.hi.y);
        } while (!point_free(p));
        coords.push_back(p.x);
        coords.push_back(p.y);
    }
    return BlockConfig(all_agents(), kAgentDim, std::move(coords));
}

}  // namespace factplan
