#include "factplan_checks/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <tuple>

#include "factplan/analysis.hpp"
#include "factplan/benchmark.hpp"
#include "factplan/factorization.hpp"
#include "factplan/planners.hpp"
#include "factplan/scenario.hpp"
#include "factplan_checks/oracles.hpp"

#ifndef FACTPLAN_DEFAULT_SCENARIO
#define FACTPLAN_DEFAULT_SCENARIO "assets/scenarios/cross4.json"
#endif

namespace factplan_checks {

namespace fp = factplan;

namespace {

using Clock = std::chrono::steady_clock;

std::string printf_string(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

fp::Scenario load(const SuiteOptions& o, std::size_t agents) {
    const std::string path = o.scenario_path.empty() ? FACTPLAN_DEFAULT_SCENARIO : o.scenario_path;
    return fp::load_scenario(path).first_agents(agents);
}

template <class F>
CheckResult timed(std::string name, F body) {
    const auto t0 = Clock::now();
    CheckResult r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.name = std::move(name);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

using NodeKey = std::pair<std::uint32_t, std::vector<double>>;

NodeKey key_of(const fp::BlockConfig& c) {
    return {c.agents().mask(), std::vector<double>(c.coords().begin(), c.coords().end())};
}

struct EdgeKey {
    NodeKey source;
    std::vector<NodeKey> targets;
    double cost;
};

std::vector<NodeKey> node_multiset(const fp::Hypergraph& g) {
    std::vector<NodeKey> v;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        v.push_back(key_of(g.node(fp::NodeId(i)).config));
    }
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<EdgeKey> edge_multiset(const fp::Hypergraph& g) {
    std::vector<EdgeKey> v;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(fp::EdgeId(i));
        EdgeKey k{key_of(g.node(e.source).config), {}, e.cost};
        for (auto t : e.targets) {
            k.targets.push_back(key_of(g.node(t).config));
        }
        v.push_back(std::move(k));
    }
    std::sort(v.begin(), v.end(), [](const EdgeKey& a, const EdgeKey& b) {
        return std::tie(a.source, a.targets) < std::tie(b.source, b.targets);
    });
    return v;
}

/// Best cost of one trial at iteration `it`, carrying the last value forward
/// once the trial has stopped.
std::optional<double> cost_at(const std::vector<fp::CostSample>& trace, std::uint64_t it) {
    std::optional<double> c;
    for (const auto& s : trace) {
        if (s.iteration > it) {
            break;
        }
        c = s.cost;
    }
    return c;
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(v.size());
}

}  // namespace

CheckResult check_never_factorize_equivalence(const SuiteOptions& o) {
    return timed("never-factorize-equivalence", [&] {
        const fp::Scenario s = load(o, 2);
        const fp::Problem problem = s.problem();
        const fp::PlannerParams params;
        const auto never = fp::never_factorize();
        std::size_t mismatches = 0;
        std::size_t nodes = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto joint = fp::run_sba(problem, params, seed);
            const auto fact = fp::run_fact_sba(problem, params, *never, seed);
            const auto na = node_multiset(joint.graph);
            const auto nb = node_multiset(fact.graph);
            const auto ea = edge_multiset(joint.graph);
            const auto eb = edge_multiset(fact.graph);
            bool same = na == nb && ea.size() == eb.size();
            for (std::size_t i = 0; same && i < ea.size(); ++i) {
                same = ea[i].source == eb[i].source && ea[i].targets == eb[i].targets &&
                       std::abs(ea[i].cost - eb[i].cost) <= 1e-12;
            }
            mismatches += same ? 0 : 1;
            nodes += na.size();
        }
        CheckResult r;
        r.passed = mismatches == 0;
        r.detail = printf_string("10 seeds, %zu graph mismatches, %zu nodes compared", mismatches, nodes);
        return r;
    });
}

CheckResult check_edge_reduction(const SuiteOptions& o) {
    return timed("edge-count-reduction", [&] {
        fp::BenchmarkConfig cfg;
        cfg.trials = o.trials;
        cfg.parallelism = o.parallelism;
        const auto reports = fp::run_benchmark(load(o, 2), cfg);
        std::vector<double> rrg, fact;
        for (const auto& r : reports) {
            if (!r.error.empty()) {
                throw std::runtime_error("trial failed: " + r.error);
            }
            (r.algorithm == fp::Algorithm::rrg ? rrg : fact).push_back(static_cast<double>(r.edges));
        }
        const double ratio = mean(fact) / mean(rrg);
        CheckResult r;
        r.passed = ratio <= 1.0 / 3.0;
        r.detail = printf_string("%zu paired trials, mean edges factrrg %.1f / rrg %.1f = %.4f (limit 0.3333)",
                                 o.trials, mean(fact), mean(rrg), ratio);
        return r;
    });
}

std::vector<CheckResult> check_cost_dominance_and_overhead(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    std::vector<fp::TrialReport> four_agent;
    for (std::size_t agents : {3, 4}) {
        out.push_back(timed(printf_string("cost-dominance-%zu-agents", agents), [&] {
            fp::BenchmarkConfig cfg;
            cfg.trials = o.trials;
            cfg.parallelism = o.parallelism;
            auto reports = fp::run_benchmark(load(o, agents), cfg);
            std::vector<const fp::TrialReport*> rrg, fact;
            std::vector<double> rrg_final, fact_final;
            std::uint64_t last = 0;
            for (const auto& r : reports) {
                if (!r.error.empty()) {
                    throw std::runtime_error("trial failed: " + r.error);
                }
                const bool is_rrg = r.algorithm == fp::Algorithm::rrg;
                (is_rrg ? rrg : fact).push_back(&r);
                if (r.final_cost) {
                    (is_rrg ? rrg_final : fact_final).push_back(*r.final_cost);
                }
                last = std::max(last, r.cost_trace.back().iteration);
            }
            // Checkpoints from the first iteration at which both planners have a
            // solved trial; means run over the trials solved by then.
            std::size_t counted = 0;
            std::size_t dominated = 0;
            const std::uint64_t cadence = cfg.params.cost_cadence;
            for (std::uint64_t it = cadence; it <= last; it += cadence) {
                std::vector<double> a, b;
                for (const auto* r : rrg) {
                    if (const auto c = cost_at(r->cost_trace, it)) {
                        a.push_back(*c);
                    }
                }
                for (const auto* r : fact) {
                    if (const auto c = cost_at(r->cost_trace, it)) {
                        b.push_back(*c);
                    }
                }
                if (a.empty() || b.empty()) {
                    continue;
                }
                ++counted;
                dominated += mean(b) <= mean(a) ? 1 : 0;
            }
            const bool all_solved = rrg_final.size() == rrg.size() && fact_final.size() == fact.size();
            const double share = counted ? static_cast<double>(dominated) / static_cast<double>(counted) : 0.0;
            CheckResult r;
            r.passed = all_solved && mean(fact_final) <= mean(rrg_final) && counted > 0 && share >= 0.7;
            r.detail = printf_string(
                "solved rrg %zu/%zu factrrg %zu/%zu, final cost factrrg %.4f vs rrg %.4f, "
                "factrrg <= rrg at %zu/%zu checkpoints (%.1f%%, need 70%%)",
                rrg_final.size(), rrg.size(), fact_final.size(), fact.size(), mean(fact_final), mean(rrg_final),
                dominated, counted, 100.0 * share);
            if (agents == 4) {
                four_agent = std::move(reports);
            }
            return r;
        }));
    }
    CheckResult merged{"cost-dominance", out[0].passed && out[1].passed,
                       "3 agents: " + out[0].detail + "; 4 agents: " + out[1].detail, out[0].seconds + out[1].seconds};
    out = {merged};
    out.push_back(timed("per-iteration-overhead", [&] {
        if (four_agent.empty()) {
            throw std::runtime_error("4-agent runs unavailable");
        }
        std::vector<double> rrg, fact;
        for (const auto& r : four_agent) {
            (r.algorithm == fp::Algorithm::rrg ? rrg : fact).push_back(r.ms_per_iter_mean);
        }
        const double ratio = mean(fact) / mean(rrg);
        CheckResult r;
        r.passed = ratio <= 1.5;
        r.detail = printf_string("4 agents, mean ms/iter factrrg %.4f / rrg %.4f = %.3f (limit 1.5)", mean(fact),
                                 mean(rrg), ratio);
        return r;
    }));
    return out;
}

CheckResult check_gain_formula() {
    return timed("gain-formula", [] {
        std::string notes;
        bool zero_ok = true;
        bool monotone_ok = true;
        bool limit_ok = true;
        for (std::size_t agents : {2, 3, 5}) {
            fp::GainInputs in;
            in.d_i = 2;
            in.disp_bar = 0.7;
            in.p_bar = 0.7;
            in.n_agents = agents;
            in.f = 0.0;
            zero_ok = zero_ok && fp::factorization_gain(in).gain_exact == 0.0;

            double prev = -std::numeric_limits<double>::infinity();
            std::size_t drops = 0;
            double first_drop = -1.0;
            for (int k = 0; k <= 100; ++k) {
                in.f = k / 100.0;
                const double g = fp::factorization_gain(in).gain_exact;
                if (g < prev) {
                    if (drops++ == 0) {
                        first_drop = in.f;
                    }
                }
                prev = g;
            }
            if (drops) {
                monotone_ok = false;
                notes += printf_string(" |A|=%zu: %zu decreases from f=%.2f;", agents, drops, first_drop);
            }

            in.disp_bar = 1e-6;
            double worst = 0.0;
            for (int k = 1; k <= 9; ++k) {
                in.f = k / 10.0;
                worst = std::max(worst, std::abs(fp::factorization_gain(in).gain_exact - in.f));
            }
            limit_ok = limit_ok && worst < 0.05;
            notes += printf_string(" |A|=%zu max|g-f| at small dispersion %.2e;", agents, worst);
        }
        CheckResult r;
        r.passed = zero_ok && monotone_ok && limit_ok;
        r.detail = printf_string("g(0)=0 %s, monotone %s, limit %s;", zero_ok ? "ok" : "FAIL",
                                 monotone_ok ? "ok" : "FAIL", limit_ok ? "ok" : "FAIL") +
                   notes;
        return r;
    });
}

CheckResult check_dispersion_bound() {
    return timed("dispersion-bound", [] {
        constexpr double disp = 0.2;
        constexpr double p = 0.9;
        constexpr int trials = 200;
        const auto n = static_cast<std::size_t>(std::ceil(fp::sufficient_samples(1.0, 2, disp, p)));
        std::mt19937_64 rng(20240917);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            std::vector<std::vector<double>> pts(n);
            for (auto& q : pts) {
                q = {u(rng), u(rng)};
            }
            hits += fp::linf_dispersion(pts, 200) <= disp ? 1 : 0;
        }
        const double freq = static_cast<double>(hits) / trials;
        const double margin = 1.959963984540054 * std::sqrt(p * (1.0 - p) / trials);
        CheckResult r;
        r.passed = freq >= p - margin;
        r.detail = printf_string("N=%zu, %d/%d trials within dispersion %.1f, frequency %.3f >= %.4f", n, hits, trials,
                                 disp, freq, p - margin);
        return r;
    });
}

CheckResult check_epsilon_composition() {
    return timed("epsilon-composition", [] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> opt_dist(0.01, 10.0);
        std::uniform_real_distribution<double> eps_dist(0.0, 2.0);
        std::uniform_int_distribution<int> agents_dist(2, 6);
        std::size_t violations = 0;
        std::size_t concat_violations = 0;
        for (int t = 0; t < 10000; ++t) {
            const int n = agents_dist(rng);
            std::vector<double> opt(n), cost(n);
            for (int i = 0; i < n; ++i) {
                opt[i] = opt_dist(rng);
                cost[i] = opt[i] * (1.0 + eps_dist(rng));
            }
            violations += fp::epsilon_composition_check(cost, opt).holds() ? 0 : 1;

            double seg_opt[2] = {opt_dist(rng), opt_dist(rng)};
            double seg_cost[2] = {seg_opt[0] * (1.0 + eps_dist(rng)), seg_opt[1] * (1.0 + eps_dist(rng))};
            concat_violations += fp::epsilon_concatenation_check(seg_cost, seg_opt).holds() ? 0 : 1;
        }
        CheckResult r;
        r.passed = violations == 0 && concat_violations == 0;
        r.detail = printf_string("10000 vectors: %zu product violations, %zu concatenation violations", violations,
                                 concat_violations);
        return r;
    });
}

CheckResult check_hyperpath_oracle() {
    return timed("hyperpath-dp-oracle", [] {
        std::mt19937_64 rng(11);
        std::size_t mismatches = 0;
        std::size_t solvable = 0;
        std::size_t with_split = 0;
        for (int t = 0; t < 200; ++t) {
            const RandomHypergraph h = random_hypergraph(rng);
            const double brute = brute_best_cost(h);
            const auto sol = fp::best_solution(h.graph, [&h](const fp::BlockConfig& x) { return h.is_goal(x); });
            with_split += h.graph.stats().splitting_edges > 0 ? 1 : 0;
            if (std::isinf(brute)) {
                mismatches += sol ? 1 : 0;
                continue;
            }
            ++solvable;
            if (!sol || sol->total_cost != brute || hyperpath_cost(h, *sol) != brute) {
                ++mismatches;
            }
        }
        CheckResult r;
        r.passed = mismatches == 0;
        r.detail = printf_string("200 hypergraphs (%zu solvable, %zu with splitting edges), %zu mismatches", solvable,
                                 with_split, mismatches);
        return r;
    });
}

CheckResult check_collision_oracle(const SuiteOptions& o) {
    return timed("collision-oracle", [&] {
        const fp::Scenario s = load(o, 4);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> agents_dist(2, 4);
        std::size_t disagreements = 0;
        std::size_t banded = 0;
        std::size_t free_count = 0;
        for (int t = 0; t < 1000; ++t) {
            const std::size_t n = agents_dist(rng);
            const fp::Environment env = s.first_agents(n).environment();
            const bool short_hop = u(rng) < 0.5;
            std::vector<double> a, b;
            for (std::size_t k = 0; k < n; ++k) {
                fp::Vec2 p;
                do {
                    p = {u(rng), u(rng)};
                } while (!env.point_free(p));
                fp::Vec2 q;
                do {
                    q = short_hop ? fp::Vec2{p.x + 0.3 * (u(rng) - 0.5), p.y + 0.3 * (u(rng) - 0.5)}
                                  : fp::Vec2{u(rng), u(rng)};
                } while (!env.point_free(q));
                a.insert(a.end(), {p.x, p.y});
                b.insert(b.end(), {q.x, q.y});
            }
            const fp::BlockConfig from(fp::AgentSet::first(n), 2, a);
            const fp::BlockConfig to(fp::AgentSet::first(n), 2, b);
            const bool closed_form = env.collision_free(from, to);
            free_count += closed_form ? 1 : 0;
            if (std::abs(transition_clearance(env, from, to)) <= 1e-9) {
                ++banded;
                continue;
            }
            disagreements += closed_form != dense_collision_free(env, from, to, 10000) ? 1 : 0;
        }
        CheckResult r;
        r.passed = disagreements == 0;
        r.detail = printf_string("1000 transitions (%zu free), %zu in boundary band, %zu disagreements", free_count,
                                 banded, disagreements);
        return r;
    });
}

std::vector<CheckResult> run_suite(const SuiteOptions& o, std::ostream& out) {
    std::vector<CheckResult> results;
    const auto emit = [&](CheckResult r) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << printf_string(" [%.1f s]", r.seconds)
            << std::endl;
        results.push_back(std::move(r));
    };
    emit(check_never_factorize_equivalence(o));
    if (!o.quick) {
        emit(check_edge_reduction(o));
        for (auto& r : check_cost_dominance_and_overhead(o)) {
            emit(std::move(r));
        }
    }
    emit(check_gain_formula());
    emit(check_dispersion_bound());
    emit(check_epsilon_composition());
    emit(check_hyperpath_oracle());
    emit(check_collision_oracle(o));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace factplan_checks
