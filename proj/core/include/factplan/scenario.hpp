#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "factplan/cone.hpp"
#include "factplan/environment.hpp"
#include "factplan/planners.hpp"

namespace factplan {

inline constexpr std::size_t kMaxScenarioAgents = 6;

struct AgentSpec {
    std::string name;
    Vec2 start;
    Rect goal;
};

struct HeuristicSpec {
    std::string name = "cone";
    double cone_half_angle = kDefaultConeHalfAngle;
};

/// Planning scenario in unit-box coordinates.
struct Scenario {
    std::string name;
    Workspace workspace;
    std::vector<AgentSpec> agents;
    HeuristicSpec heuristic;

    [[nodiscard]] Environment environment() const;
    [[nodiscard]] BlockConfig start() const;
    [[nodiscard]] Problem problem() const { return Problem{environment(), start()}; }

    /// Sub-scenario with the first `k` agents in file order.
    [[nodiscard]] Scenario first_agents(std::size_t k) const;
};

/// Throws ScenarioValidationError on overlapping starts, starts or goals inside
/// obstacles, out-of-range agent counts, or obstacles leaving the bounds.
void validate(const Scenario& s);

/// Parses the JSON scenario format, normalizes to the unit box and validates.
/// Throws ScenarioParseError for malformed input.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace factplan
