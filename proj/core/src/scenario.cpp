#include "factplan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "factplan/errors.hpp"

namespace factplan {

namespace {

using nlohmann::json;

Vec2 read_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ScenarioParseError(std::string(what) + " must be an array [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Rect read_rect(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 4) {
        throw ScenarioParseError(std::string(what) + " must be an array [x_min, y_min, x_max, y_max]");
    }
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw ScenarioParseError(std::string(what) + " must contain numbers");
        }
    }
    Rect r{{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
    if (!r.valid()) {
        throw ScenarioParseError(std::string(what) + " must have x_max > x_min and y_max > y_min");
    }
    return r;
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ScenarioParseError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

}  // namespace

Environment Scenario::environment() const {
    std::vector<Rect> goals;
    goals.reserve(agents.size());
    for (const auto& a : agents) {
        goals.push_back(a.goal);
    }
    return Environment(workspace, std::move(goals));
}

BlockConfig Scenario::start() const {
    std::vector<double> coords;
    coords.reserve(2 * agents.size());
    for (const auto& a : agents) {
        coords.push_back(a.start.x);
        coords.push_back(a.start.y);
    }
    return BlockConfig(AgentSet::first(agents.size()), Environment::kAgentDim, std::move(coords));
}

Scenario Scenario::first_agents(std::size_t k) const {
    if (k == 0 || k > agents.size()) {
        throw ScenarioValidationError("scenario '" + name + "' has " + std::to_string(agents.size()) +
                                      " agents, cannot take " + std::to_string(k));
    }
    Scenario s = *this;
    s.agents.resize(k);
    return s;
}

void validate(const Scenario& s) {
    const auto fail = [&s](const std::string& msg) { throw ScenarioValidationError("scenario '" + s.name + "': " + msg); };
    if (s.agents.empty() || s.agents.size() > kMaxScenarioAgents) {
        fail("agent count must be between 1 and " + std::to_string(kMaxScenarioAgents));
    }
    if (!(s.workspace.agent_radius > 0.0)) {
        fail("agent radius must be positive");
    }
    const Rect& b = s.workspace.bounds;
    for (const auto& o : s.workspace.obstacles) {
        if (!b.contains(o.lo) || !b.contains(o.hi)) {
            fail("obstacle outside workspace bounds");
        }
    }
    const Environment env = s.environment();
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
        const auto& a = s.agents[i];
        if (!b.contains(a.start)) {
            fail("start of " + a.name + " outside workspace bounds");
        }
        if (!env.point_free(a.start)) {
            fail("start of " + a.name + " inside an obstacle");
        }
        if (!b.contains(a.goal.lo) || !b.contains(a.goal.hi)) {
            fail("goal of " + a.name + " outside workspace bounds");
        }
        if (!env.point_free(a.goal.center())) {
            fail("goal of " + a.name + " is not obstacle-free at its centre");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!(norm(a.start - s.agents[j].start) > 2.0 * s.workspace.agent_radius)) {
                fail("starts of " + s.agents[j].name + " and " + a.name + " overlap");
            }
        }
    }
    if (s.heuristic.name != "cone" && s.heuristic.name != "never") {
        fail("unknown heuristic '" + s.heuristic.name + "'");
    }
}

Scenario parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(std::string("malformed scenario JSON: ") + e.what());
    }

    Scenario s;
    try {
        s.name = doc.value("name", std::string("unnamed"));
        const json& ws = require(doc, "workspace");
        const Rect raw_bounds = read_rect(require(ws, "bounds"), "workspace.bounds");
        if (std::abs(raw_bounds.width() - raw_bounds.height()) > 1e-9 * raw_bounds.width()) {
            throw ScenarioValidationError("scenario '" + s.name + "': workspace bounds must be square");
        }
        const double scale = raw_bounds.width();
        const auto to_unit = [&](Vec2 p) { return (1.0 / scale) * (p - raw_bounds.lo); };
        const auto rect_to_unit = [&](Rect r) { return Rect{to_unit(r.lo), to_unit(r.hi)}; };

        const json& radius = require(ws, "agent_radius");
        if (!radius.is_number()) {
            throw ScenarioParseError("workspace.agent_radius must be a number");
        }
        s.workspace.agent_radius = radius.get<double>() / scale;
        if (ws.contains("obstacles")) {
            if (!ws.at("obstacles").is_array()) {
                throw ScenarioParseError("workspace.obstacles must be an array");
            }
            for (const auto& o : ws.at("obstacles")) {
                s.workspace.obstacles.push_back(rect_to_unit(read_rect(o, "obstacle")));
            }
        }

        const json& agents = require(doc, "agents");
        if (!agents.is_array()) {
            throw ScenarioParseError("agents must be an array");
        }
        for (const auto& a : agents) {
            AgentSpec spec;
            spec.name = a.value("name", "P" + std::to_string(s.agents.size() + 1));
            spec.start = to_unit(read_point(require(a, "start"), "agent start"));
            spec.goal = rect_to_unit(read_rect(require(a, "goal"), "agent goal"));
            s.agents.push_back(std::move(spec));
        }

        if (doc.contains("heuristic")) {
            const json& h = doc.at("heuristic");
            s.heuristic.name = h.value("name", s.heuristic.name);
            s.heuristic.cone_half_angle = h.value("cone_half_angle", s.heuristic.cone_half_angle);
        }
    } catch (const json::exception& e) {
        throw ScenarioParseError(std::string("scenario schema error: ") + e.what());
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioParseError("cannot open scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace factplan
