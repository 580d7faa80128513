// plan: benchmark and analysis front end for the factplan library.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "factplan/benchmark.hpp"
#include "factplan/errors.hpp"
#include "factplan/gain_grid.hpp"
#include "factplan/scenario.hpp"
#include "factplan_checks/suite.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kChecksFailed = 1,
    kUsage = 2,
    kScenarioParse = 3,
    kScenarioValidation = 4,
    kIo = 5,
    kInvalidArgument = 6,
    kInternal = 7,
};

int report_error(int code, std::string_view kind, std::string_view message) {
    nlohmann::ordered_json j{{"error", kind}, {"exit_code", code}, {"message", message}};
    std::cerr << j.dump() << '\n';
    return code;
}

struct RunOptions {
    std::string scenario;
    std::vector<std::string> algos{"rrg", "factrrg"};
    std::size_t trials = 20;
    bool full = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string heuristic;
    double cone_angle = -1.0;
    std::string radius_mode = "per-block";
    std::size_t stop_nodes = 1000;
    std::uint64_t max_iterations = 100000;
    std::size_t agents = 0;
    std::size_t samples = 0;
    std::size_t parallel = 1;
    bool dump_graphs = false;
};

int cmd_run(const RunOptions& o) {
    factplan::Scenario scenario = factplan::load_scenario(o.scenario);
    if (o.agents != 0) {
        scenario = scenario.first_agents(o.agents);
    }
    factplan::BenchmarkConfig cfg;
    cfg.algorithms.clear();
    for (const auto& a : o.algos) {
        cfg.algorithms.push_back(factplan::parse_algorithm(a));
    }
    cfg.trials = o.full ? 100 : o.trials;
    cfg.base_seed = o.seed;
    cfg.parallelism = o.parallel;
    cfg.prm_samples = o.samples;
    cfg.keep_graphs = o.dump_graphs;
    cfg.params.stop_nodes = o.stop_nodes;
    cfg.params.max_iterations = o.max_iterations;
    cfg.params.radius_mode = factplan::parse_radius_mode(o.radius_mode);
    if (!o.heuristic.empty() || o.cone_angle > 0.0) {
        factplan::HeuristicSpec h = scenario.heuristic;
        if (!o.heuristic.empty()) {
            h.name = o.heuristic;
        }
        if (o.cone_angle > 0.0) {
            h.cone_half_angle = o.cone_angle;
        }
        cfg.heuristic = h;
    }

    const auto reports = factplan::run_benchmark(scenario, cfg);
    factplan::emit_results(reports, o.out, factplan::config_echo(scenario, cfg));
    if (o.dump_graphs) {
        factplan::emit_graph_dumps(reports, o.out);
    }
    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (!r.error.empty()) {
            ++failed;
            std::fprintf(stderr, "trial %zu %s failed: %s\n", r.trial, std::string(factplan::to_string(r.algorithm)).c_str(),
                         r.error.c_str());
        }
    }
    for (const auto& s : factplan::summarize(reports)) {
        std::printf("%-8s trials=%zu solved=%zu cost=%.4f edges=%.1f splitting=%.1f ms/iter=%.4f\n",
                    std::string(factplan::to_string(s.algorithm)).c_str(), s.trials, s.solved,
                    s.final_cost_mean.value_or(-1.0), s.edges_mean, s.splitting_edges_mean, s.ms_per_iter_mean);
    }
    if (failed == reports.size()) {
        return report_error(kInternal, "all_trials_failed", reports.front().error);
    }
    return kOk;
}

int cmd_gain(const std::string& grid_spec, const std::string& out_path) {
    const auto grid = factplan::parse_gain_grid(grid_spec);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + out_path + " for writing");
    }
    const std::size_t rows = factplan::write_gain_csv(grid, out);
    out.close();
    if (!out) {
        throw std::runtime_error("write to " + out_path + " failed");
    }
    std::printf("wrote %zu rows to %s\n", rows, out_path.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factorized multi-agent sampling-based planning: benchmarks and analysis"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run paired benchmark trials on a scenario");
    run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--algo", run.algos, "Algorithms: rrg, factrrg, prmstar (comma list)")->delimiter(',');
    run_cmd->add_option("--trials", run.trials, "Number of paired trials")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--full", run.full, "Full-scale mode: 100 trials");
    run_cmd->add_option("--seed", run.seed, "Base seed; trial t uses seed + t");
    run_cmd->add_option("--out", run.out, "Output directory")->required();
    run_cmd->add_option("--heuristic", run.heuristic, "Factorization heuristic override")
        ->check(CLI::IsMember({"cone", "never"}));
    run_cmd->add_option("--cone-angle", run.cone_angle, "Cone half-angle in radians")->check(CLI::Range(1e-6, 1.5707963267948966));
    run_cmd->add_option("--radius-mode", run.radius_mode, "Connection radius dimension")
        ->check(CLI::IsMember({"per-block", "largest"}));
    run_cmd->add_option("--stop-nodes", run.stop_nodes, "Stop once solved and above this node count");
    run_cmd->add_option("--max-iterations", run.max_iterations, "Iteration cap per trial");
    run_cmd->add_option("--agents", run.agents, "Use only the first N agents of the scenario");
    run_cmd->add_option("--samples", run.samples, "PRM* point count (default: stop-nodes)");
    run_cmd->add_option("--parallel", run.parallel, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_flag("--dump-graphs", run.dump_graphs, "Write a graph dump per trial");

    std::string grid_spec;
    std::string gain_out;
    auto* gain_cmd = app.add_subcommand("gain", "Tabulate the factorization gain model");
    gain_cmd->add_option("--grid", grid_spec, "Grid, e.g. \"f=0:1:0.01;agents=2,3,5;disp=0.7;p=0.7;di=2\"")->required();
    gain_cmd->add_option("--out", gain_out, "Output CSV")->required();

    factplan_checks::SuiteOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the property and oracle suites");
    verify_cmd->add_option("--scenario", verify.scenario_path, "cross4 scenario file")->check(CLI::ExistingFile);
    verify_cmd->add_flag("--quick", verify.quick, "Skip the benchmark-scale criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        return report_error(kUsage, "usage", e.what());
    }

    try {
        if (*run_cmd) {
            return cmd_run(run);
        }
        if (*gain_cmd) {
            return cmd_gain(grid_spec, gain_out);
        }
        const auto results = factplan_checks::run_suite(verify, std::cout);
        return factplan_checks::all_passed(results) ? kOk
                                                    : report_error(kChecksFailed, "checks_failed",
                                                                   "one or more criteria failed");
    } catch (const factplan::ScenarioParseError& e) {
        return report_error(kScenarioParse, "scenario_parse", e.what());
    } catch (const factplan::ScenarioValidationError& e) {
        return report_error(kScenarioValidation, "scenario_validation", e.what());
    } catch (const factplan::DivergenceError& e) {
        return report_error(kInvalidArgument, "divergence", e.what());
    } catch (const std::invalid_argument& e) {
        return report_error(kInvalidArgument, "invalid_argument", e.what());
    } catch (const std::runtime_error& e) {
        return report_error(kIo, "io", e.what());
    } catch (const std::exception& e) {
        return report_error(kInternal, "internal", e.what());
    }
}
