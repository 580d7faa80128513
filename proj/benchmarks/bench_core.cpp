// Microbenchmarks for the planner's inner loops on the bundled cross4 scenario.

#include <benchmark/benchmark.h>

#include <random>

#include "factplan/factorization.hpp"
#include "factplan/hypergraph.hpp"
#include "factplan/planners.hpp"
#include "factplan/scenario.hpp"

namespace {

using namespace factplan;

const Scenario& cross4() {
    static const Scenario s = load_scenario(FACTPLAN_SCENARIO_DIR "/cross4.json");
    return s;
}

std::vector<BlockConfig> samples(const Environment& env, std::size_t n, std::uint64_t seed) {
    SampleStream rng(seed);
    std::vector<BlockConfig> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(env.sample_free(rng, 0.0));
    }
    return out;
}

void BM_CollisionFree(benchmark::State& state) {
    const auto s = cross4().first_agents(static_cast<std::size_t>(state.range(0)));
    const Environment env = s.environment();
    const auto pts = samples(env, 256, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(env.collision_free(pts[i % 256], pts[(i + 1) % 256]));
        ++i;
    }
}
BENCHMARK(BM_CollisionFree)->DenseRange(1, 4);

void BM_Near(benchmark::State& state) {
    const Environment env = cross4().environment();
    const auto pts = samples(env, static_cast<std::size_t>(state.range(0)), 2);
    Hypergraph g;
    for (const auto& p : pts) {
        g.add_node(p);
    }
    const auto queries = samples(env, 256, 3);
    const double r = connection_radius(g.node_count(), 8);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.near(queries[i++ % 256], r * 0.05));
    }
}
BENCHMARK(BM_Near)->RangeMultiplier(4)->Range(256, 16384);

void BM_ConeIndependence(benchmark::State& state) {
    const Environment env = cross4().environment();
    const ConeHeuristic h(env, cross4().heuristic.cone_half_angle);
    const auto pts = samples(env, 256, 4);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(factorize(pts[i++ % 256], h).size());
    }
}
BENCHMARK(BM_ConeIndependence);

void BM_Planner(benchmark::State& state) {
    const auto s = cross4().first_agents(3);
    const Problem problem = s.problem();
    const auto h = make_heuristic("cone", problem.env, s.heuristic.cone_half_angle);
    PlannerParams params;
    params.max_iterations = 1000;
    params.stop_nodes = 1u << 30;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto r = state.range(0) == 0 ? run_sba(problem, params, seed) : run_fact_sba(problem, params, *h, seed);
        benchmark::DoNotOptimize(r.stats.edges);
        ++seed;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(params.max_iterations));
    state.SetLabel(state.range(0) == 0 ? "rrg" : "factrrg");
}
BENCHMARK(BM_Planner)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
