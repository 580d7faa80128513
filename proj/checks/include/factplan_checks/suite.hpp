#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace factplan_checks {

struct SuiteOptions {
    /// cross4 scenario; defaults to the bundled asset.
    std::string scenario_path;
    /// Skip the benchmark-scale criteria (edge ratio, cost dominance, timing).
    bool quick = false;
    std::size_t trials = 20;
    std::size_t parallelism = 1;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

CheckResult check_never_factorize_equivalence(const SuiteOptions& o);
CheckResult check_edge_reduction(const SuiteOptions& o);
/// Cost dominance over the 3- and 4-agent variants, then the timing ratio
/// measured on the same 4-agent runs.
std::vector<CheckResult> check_cost_dominance_and_overhead(const SuiteOptions& o);
CheckResult check_gain_formula();
CheckResult check_dispersion_bound();
CheckResult check_epsilon_composition();
CheckResult check_hyperpath_oracle();
CheckResult check_collision_oracle(const SuiteOptions& o);

/// Runs every criterion, printing one `PASS`/`FAIL` line each as it finishes.
std::vector<CheckResult> run_suite(const SuiteOptions& o, std::ostream& out);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace factplan_checks
