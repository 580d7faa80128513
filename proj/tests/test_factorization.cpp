#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "factplan/errors.hpp"
#include "factplan/factorization.hpp"

using namespace factplan;

namespace {

constexpr double kR = 0.05;

Environment open_env(std::vector<Rect> goals) {
    Workspace w;
    w.agent_radius = kR;
    return Environment(w, std::move(goals));
}

BlockConfig at(AgentSet agents, std::vector<double> xy) { return BlockConfig(agents, 2, std::move(xy)); }

// Fixed-answer heuristic: agents i and j are dependent iff {i, j} is listed.
class TableHeuristic final : public FactorizationHeuristic {
public:
    explicit TableHeuristic(std::vector<std::pair<std::uint32_t, std::uint32_t>> dependent)
        : dependent_(std::move(dependent)) {}
    [[nodiscard]] std::string_view name() const override { return "table"; }
    [[nodiscard]] bool independent(const BlockConfig& a, const BlockConfig& b) const override {
        for (auto ia : a.agents().members()) {
            for (auto ib : b.agents().members()) {
                for (auto [i, j] : dependent_) {
                    if ((ia.index == i && ib.index == j) || (ia.index == j && ib.index == i)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> dependent_;
};

// Sampled distance between two polygon boundaries.
double boundary_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
    constexpr int kSteps = 400;
    const auto points = [](const ConvexPolygon& p) {
        std::vector<Vec2> out;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Vec2 u = p[i];
            const Vec2 v = p[(i + 1) % p.size()];
            for (int k = 0; k < kSteps; ++k) {
                out.push_back(u + (static_cast<double>(k) / kSteps) * (v - u));
            }
        }
        return out;
    };
    double best = std::numeric_limits<double>::infinity();
    for (Vec2 p : points(a)) {
        for (Vec2 q : points(b)) {
            best = std::min(best, norm(p - q));
        }
    }
    return best;
}

}  // namespace

TEST(Factorize, NeverGivesOneBlock) {
    const auto x = at(AgentSet::first(3), {0.1, 0.1, 0.5, 0.5, 0.9, 0.9});
    const auto p = factorize(x, NeverFactorize{});
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0], x);
}

TEST(Factorize, ConnectedComponents) {
    const auto x = at(AgentSet::first(3), {0.1, 0.1, 0.5, 0.5, 0.9, 0.9});
    EXPECT_EQ(factorize(x, TableHeuristic({})).size(), 3u);
    const auto p = factorize(x, TableHeuristic({{0, 1}}));
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0], project(x, AgentSet{0, 1}));
    EXPECT_EQ(p[1], project(x, AgentSet{2}));
    // 0-1 and 1-2 dependent: transitively one block even though 0-2 is independent.
    EXPECT_EQ(factorize(x, TableHeuristic({{0, 1}, {1, 2}})).size(), 1u);
    const auto q = factorize(x, TableHeuristic({{0, 2}}));
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[1].agents(), (AgentSet{0, 2}));
}

TEST(Cone, GoalCentreInsideAndDegenerateCase) {
    const Rect goal{{0.8, 0.45}, {0.9, 0.55}};
    const Rect bounds{{0, 0}, {1, 1}};
    const Cone c = make_cone({0.1, 0.5}, goal, bounds);
    EXPECT_FALSE(c.degenerate);
    EXPECT_NEAR(c.axis.x, 1.0, 1e-15);
    EXPECT_TRUE(c.contains(goal.center()));
    EXPECT_TRUE(c.contains(c.apex));
    const Cone d = make_cone(goal.center(), goal, bounds);
    EXPECT_TRUE(d.degenerate);
    for (Vec2 corner : {goal.lo, goal.hi, Vec2{goal.lo.x, goal.hi.y}, Vec2{goal.hi.x, goal.lo.y}}) {
        EXPECT_TRUE(d.contains(corner));
    }
    EXPECT_THROW(make_cone({0.1, 0.5}, goal, bounds, 0.0), std::invalid_argument);
}

TEST(Cone, MembershipMatchesAngleOracle) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Rect bounds{{0, 0}, {1, 1}};
    int inside = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 lo{0.8 * u(rng), 0.8 * u(rng)};
        const Rect goal{lo, lo + Vec2{0.1, 0.15}};
        const Vec2 apex{u(rng), u(rng)};
        const double half = 0.05 + 1.4 * u(rng);
        const Cone c = make_cone(apex, goal, bounds, half);
        if (c.degenerate) {
            continue;
        }
        for (int k = 0; k < 200; ++k) {
            const Vec2 p{u(rng), u(rng)};
            const Vec2 v = p - apex;
            const double along = dot(v, c.axis);
            const double across = std::abs(cross(c.axis, v));
            const double edge = along * std::tan(half);
            if (std::abs(across - edge) < 1e-9 || std::abs(along - c.length) < 1e-9) {
                continue;
            }
            const bool expected = along >= 0.0 && along <= c.length && across <= edge;
            ASSERT_EQ(c.contains(p), expected) << trial << ' ' << k;
            inside += expected;
        }
    }
    EXPECT_GT(inside, 1000);
}

TEST(ConeHeuristic, AntiParallelConesAreIndependent) {
    const Environment env = open_env({Rect{{0.02, 0.45}, {0.08, 0.55}}, Rect{{0.92, 0.45}, {0.98, 0.55}}});
    const ConeHeuristic h(env);
    const auto a = at(AgentSet{0}, {0.25, 0.5});
    const auto b = at(AgentSet{1}, {0.75, 0.5});
    const Cone ca = h.cone_region(AgentId{0}, {0.25, 0.5});
    const Cone cb = h.cone_region(AgentId{1}, {0.75, 0.5});
    EXPECT_GT(boundary_distance(ca.region, cb.region), 2.0 * kR);
    EXPECT_NEAR(polygon_distance(ca.region, cb.region), boundary_distance(ca.region, cb.region), 1e-3);
    EXPECT_TRUE(h.independent(a, b));
    EXPECT_TRUE(h.independent(b, a));
}

TEST(ConeHeuristic, SharedApexAndAxisAreDependent) {
    const Rect g{{0.85, 0.45}, {0.95, 0.55}};
    const Environment env = open_env({g, g});
    const ConeHeuristic h(env);
    EXPECT_FALSE(h.independent(at(AgentSet{0}, {0.1, 0.5}), at(AgentSet{1}, {0.1, 0.5})));
    EXPECT_THROW((void)h.independent(at(AgentSet{0}, {0.1, 0.5}), at(AgentSet{0}, {0.1, 0.5})), StructuralError);
}

TEST(ConeHeuristic, SymmetricOnRandomPairs) {
    const Environment env = open_env({Rect{{0.85, 0.45}, {0.95, 0.55}}, Rect{{0.45, 0.85}, {0.55, 0.95}},
                                      Rect{{0.05, 0.45}, {0.15, 0.55}}});
    const ConeHeuristic h(env);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int independent = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = at(AgentSet{0}, {u(rng), u(rng)});
        const auto b = at(AgentSet{1, 2}, {u(rng), u(rng), u(rng), u(rng)});
        const bool ab = h.independent(a, b);
        ASSERT_EQ(ab, h.independent(b, a));
        // Multi-agent blocks pass only if every cross pair does.
        const bool pairwise = h.independent(a, project(b, AgentSet{1})) && h.independent(a, project(b, AgentSet{2}));
        ASSERT_EQ(ab, pairwise);
        independent += ab;
    }
    EXPECT_GT(independent, 0);
}

TEST(ConeHeuristic, Coherency) {
    const Environment env = open_env({Rect{{0.85, 0.45}, {0.95, 0.55}}, Rect{{0.45, 0.85}, {0.55, 0.95}}});
    const ConeHeuristic h(env);
    const auto x = at(AgentSet::first(2), {0.1, 0.5, 0.5, 0.1});
    Node origin{x, h.resources(x), 0};
    ASSERT_TRUE(origin.resources);
    ASSERT_EQ(origin.resources->size(), 2u);

    const BlockConfig* same[] = {&x};
    EXPECT_TRUE(h.coherent(origin, same));

    const auto ahead = at(AgentSet::first(2), {0.3, 0.5, 0.5, 0.3});
    const BlockConfig* fwd[] = {&ahead};
    EXPECT_TRUE(h.coherent(origin, fwd));

    const auto behind = at(AgentSet::first(2), {0.05, 0.5, 0.5, 0.3});
    const BlockConfig* back[] = {&behind};
    EXPECT_FALSE(h.coherent(origin, back));

    // Splitting destinations are checked per agent against the origin's cones.
    const auto a = at(AgentSet{0}, {0.3, 0.5});
    const auto b = at(AgentSet{1}, {0.5, 0.05});
    const BlockConfig* split[] = {&a, &b};
    EXPECT_FALSE(h.coherent(origin, split));

    const Node bare{x, nullptr, 0};
    EXPECT_THROW((void)h.coherent(bare, same), ContractError);
    EXPECT_THROW((void)NeverFactorize{}.coherent(bare, same), ContractError);
    EXPECT_FALSE(NeverFactorize{}.resources(x));
}

TEST(StraightLineOracle, LanesAndHeadOn) {
    const Environment env = open_env({Rect{{0.85, 0.2}, {0.95, 0.3}}, Rect{{0.85, 0.7}, {0.95, 0.8}}});
    const StraightLineOracle h(env);
    EXPECT_TRUE(h.independent(at(AgentSet{0}, {0.1, 0.25}), at(AgentSet{1}, {0.1, 0.75})));

    const Environment swap = open_env({Rect{{0.85, 0.45}, {0.95, 0.55}}, Rect{{0.05, 0.45}, {0.15, 0.55}}});
    const StraightLineOracle s(swap);
    EXPECT_FALSE(s.independent(at(AgentSet{0}, {0.1, 0.5}), at(AgentSet{1}, {0.9, 0.5})));
}

TEST(StraightLineOracle, RejectsObstacles) {
    Workspace w;
    w.agent_radius = kR;
    w.obstacles = {{{0.4, 0.4}, {0.6, 0.6}}};
    const Environment env(w, {Rect{{0.8, 0.8}, {0.9, 0.9}}});
    EXPECT_THROW(StraightLineOracle{env}, ContractError);
    EXPECT_THROW(full_factorize_oracle(env), ContractError);
}

TEST(Heuristics, MakeByName) {
    const Environment env = open_env({Rect{{0.8, 0.8}, {0.9, 0.9}}});
    EXPECT_EQ(make_heuristic("never", env)->name(), "never");
    const auto cone = make_heuristic("cone", env, std::numbers::pi / 6.0);
    EXPECT_EQ(cone->name(), "cone");
    EXPECT_DOUBLE_EQ(dynamic_cast<const ConeHeuristic&>(*cone).half_angle(), std::numbers::pi / 6.0);
    EXPECT_THROW(make_heuristic("oracle", env), std::invalid_argument);
}
