#include "factplan/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "factplan/errors.hpp"
#include "factplan/version.hpp"

namespace factplan {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::rrg:
            return "rrg";
        case Algorithm::factrrg:
            return "factrrg";
        case Algorithm::prmstar:
            return "prmstar";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view text) {
    for (auto a : {Algorithm::rrg, Algorithm::factrrg, Algorithm::prmstar}) {
        if (text == to_string(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
}

void BenchmarkConfig::validate() const {
    params.validate();
    if (trials == 0) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    if (algorithms.empty()) {
        throw std::invalid_argument("no algorithm selected");
    }
    if (parallelism == 0) {
        throw std::invalid_argument("parallelism must be at least 1");
    }
}

namespace {

TrialReport run_trial(const Scenario& scenario, const BenchmarkConfig& config, std::size_t trial, Algorithm algo) {
    TrialReport report;
    report.trial = trial;
    report.algorithm = algo;
    report.seed = config.base_seed + trial;
    try {
        const Problem problem = scenario.problem();
        PlanResult result;
        switch (algo) {
            case Algorithm::rrg:
                result = run_sba(problem, config.params, report.seed);
                break;
            case Algorithm::factrrg: {
                const HeuristicSpec spec = config.heuristic.value_or(scenario.heuristic);
                const auto heuristic = make_heuristic(spec.name, problem.env, spec.cone_half_angle);
                result = run_fact_sba(problem, config.params, *heuristic, report.seed);
                break;
            }
            case Algorithm::prmstar: {
                const std::size_t n = config.prm_samples ? config.prm_samples : config.params.stop_nodes;
                result = run_prm_star(problem, config.params, n, report.seed);
                break;
            }
        }
        report.cost_trace = std::move(result.cost_trace);
        report.final_cost = result.final_cost();
        report.nodes = result.stats.nodes;
        report.edges = result.stats.edges;
        report.splitting_edges = result.stats.splitting_edges;
        report.iterations = result.iterations;
        report.ms_per_iter_mean = result.ms_per_iter_mean;
        report.ms_per_iter_std = result.ms_per_iter_std;
        report.sample_log = std::move(result.sample_log);
        if (config.keep_graphs) {
            report.graph = std::make_shared<const Hypergraph>(std::move(result.graph));
        }
    } catch (const std::exception& e) {
        report.error = e.what();
    }
    return report;
}

struct Stats {
    double mean = 0.0;
    double std = 0.0;
};

Stats mean_std(const std::vector<double>& v) {
    Stats s;
    if (v.empty()) {
        return s;
    }
    for (double x : v) {
        s.mean += x;
    }
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - s.mean) * (x - s.mean);
        }
        s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + p.string() + " for writing");
    }
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& p) {
    out.close();
    if (!out) {
        throw std::runtime_error("write to " + p.string() + " failed");
    }
}

}  // namespace

std::vector<TrialReport> run_benchmark(const Scenario& scenario, const BenchmarkConfig& config) {
    config.validate();
    const std::size_t per_trial = config.algorithms.size();
    const std::size_t jobs = config.trials * per_trial;
    std::vector<TrialReport> reports(jobs);
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            reports[j] = run_trial(scenario, config, j / per_trial, config.algorithms[j % per_trial]);
        }
    };
    const std::size_t n_threads = std::min(config.parallelism, jobs);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    return reports;
}

std::vector<AlgorithmSummary> summarize(const std::vector<TrialReport>& reports) {
    std::vector<AlgorithmSummary> out;
    for (auto algo : {Algorithm::rrg, Algorithm::factrrg, Algorithm::prmstar}) {
        std::vector<double> costs, edges, splitting, ms_mean, ms_std;
        std::size_t trials = 0;
        for (const auto& r : reports) {
            if (r.algorithm != algo || !r.error.empty()) {
                continue;
            }
            ++trials;
            if (r.final_cost) {
                costs.push_back(*r.final_cost);
            }
            edges.push_back(static_cast<double>(r.edges));
            splitting.push_back(static_cast<double>(r.splitting_edges));
            ms_mean.push_back(r.ms_per_iter_mean);
            ms_std.push_back(r.ms_per_iter_std);
        }
        if (trials == 0) {
            continue;
        }
        AlgorithmSummary s;
        s.algorithm = algo;
        s.trials = trials;
        s.solved = costs.size();
        if (!costs.empty()) {
            const Stats c = mean_std(costs);
            s.final_cost_mean = c.mean;
            s.final_cost_std = c.std;
        }
        const Stats e = mean_std(edges);
        s.edges_mean = e.mean;
        s.edges_std = e.std;
        s.splitting_edges_mean = mean_std(splitting).mean;
        // Per-iteration spread averaged over trials, not the spread of trial means.
        s.ms_per_iter_mean = mean_std(ms_mean).mean;
        s.ms_per_iter_std = mean_std(ms_std).mean;
        out.push_back(s);
    }
    return out;
}

void emit_results(const std::vector<TrialReport>& reports, const std::filesystem::path& out_dir,
                  std::string_view config_echo_json) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
    }

    const auto trace_path = out_dir / "trace.csv";
    auto trace = open_out(trace_path);
    trace << kTraceHeader << '\n';
    for (std::size_t run = 0; run < reports.size(); ++run) {
        const auto& r = reports[run];
        for (const auto& c : r.cost_trace) {
            trace << run << ',' << to_string(r.algorithm) << ',' << r.seed << ',' << c.iteration << ','
                  << fmt(c.cost) << '\n';
        }
    }
    close_checked(trace, trace_path);

    const auto summary_path = out_dir / "summary.csv";
    auto summary = open_out(summary_path);
    summary << kSummaryHeader << '\n';
    for (const auto& s : summarize(reports)) {
        summary << to_string(s.algorithm) << ',' << s.trials << ',' << s.solved << ',' << fmt(s.final_cost_mean)
                << ',' << fmt(s.final_cost_std) << ',' << fmt(s.edges_mean) << ',' << fmt(s.edges_std) << ','
                << fmt(s.splitting_edges_mean) << ',' << fmt(s.ms_per_iter_mean) << ',' << fmt(s.ms_per_iter_std)
                << '\n';
    }
    close_checked(summary, summary_path);

    nlohmann::ordered_json meta;
    meta["config"] = nlohmann::ordered_json::parse(config_echo_json);
    meta["edge_count_convention"] = kEdgeCountConvention;
    meta["versions"] = {{"factplan", kVersion}, {"compiler", kCompiler}, {"cxx_standard", __cplusplus}};
    auto& runs = meta["runs"] = nlohmann::ordered_json::array();
    for (std::size_t run = 0; run < reports.size(); ++run) {
        const auto& r = reports[run];
        nlohmann::ordered_json j{{"run_id", run},
                                 {"trial", r.trial},
                                 {"algorithm", to_string(r.algorithm)},
                                 {"seed", r.seed}};
        if (r.error.empty()) {
            j["iterations"] = r.iterations;
            j["nodes"] = r.nodes;
            j["edges"] = r.edges;
            j["splitting_edges"] = r.splitting_edges;
        } else {
            j["error"] = r.error;
        }
        runs.push_back(std::move(j));
    }
    const auto meta_path = out_dir / "meta.json";
    auto meta_out = open_out(meta_path);
    meta_out << meta.dump(2) << '\n';
    close_checked(meta_out, meta_path);
}

void emit_graph_dumps(const std::vector<TrialReport>& reports, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t run = 0; run < reports.size(); ++run) {
        const auto& r = reports[run];
        if (!r.graph) {
            continue;
        }
        const auto path = out_dir / ("graph-" + std::to_string(run) + "-" + std::string(to_string(r.algorithm)) + ".txt");
        auto out = open_out(path);
        r.graph->dump(out);
        close_checked(out, path);
    }
}

std::string config_echo(const Scenario& scenario, const BenchmarkConfig& config) {
    nlohmann::ordered_json j;
    const HeuristicSpec h = config.heuristic.value_or(scenario.heuristic);
    j["scenario"] = scenario.name;
    j["agents"] = scenario.agents.size();
    auto algos = nlohmann::ordered_json::array();
    for (auto a : config.algorithms) {
        algos.push_back(to_string(a));
    }
    j["algorithms"] = algos;
    j["trials"] = config.trials;
    j["base_seed"] = config.base_seed;
    j["parallelism"] = config.parallelism;
    j["heuristic"] = {{"name", h.name}, {"cone_half_angle", h.cone_half_angle}};
    const PlannerParams& p = config.params;
    j["params"] = {{"gamma", p.gamma},
                   {"eta", p.eta},
                   {"goal_bias", p.goal_bias},
                   {"stop_nodes", p.stop_nodes},
                   {"max_iterations", p.max_iterations},
                   {"cost_cadence", p.cost_cadence},
                   {"radius_mode", to_string(p.radius_mode)}};
    if (std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::prmstar) != config.algorithms.end()) {
        j["prm_samples"] = config.prm_samples ? config.prm_samples : p.stop_nodes;
    }
    j["workspace"] = {{"agent_radius", scenario.workspace.agent_radius},
                      {"obstacles", scenario.workspace.obstacles.size()}};
    return j.dump();
}

}  // namespace factplan
