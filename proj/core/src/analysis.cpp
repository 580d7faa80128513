#include "factplan/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "factplan/errors.hpp"

namespace factplan {

void GainInputs::validate() const {
    if (!(mu > 0.0)) {
        throw std::invalid_argument("free-space measure must be positive");
    }
    if (!(disp_bar > 0.0 && disp_bar <= 1.0)) {
        throw std::invalid_argument("target dispersion must lie in (0, 1]");
    }
    if (p_bar == 1.0) {
        throw DivergenceError("sample bound diverges at probability level 1");
    }
    if (!(p_bar >= 0.0 && p_bar < 1.0)) {
        throw std::invalid_argument("probability level must lie in [0, 1)");
    }
    if (d_i == 0 || n_agents == 0) {
        throw std::invalid_argument("dimension and agent count must be positive");
    }
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::invalid_argument("factorization factor must lie in [0, 1]");
    }
}

double sufficient_samples(double mu, std::size_t d, double disp_bar, double p_bar) {
    if (p_bar == 1.0) {
        throw DivergenceError("sample bound diverges at probability level 1");
    }
    if (!(p_bar >= 0.0 && p_bar < 1.0) || !(disp_bar > 0.0 && disp_bar <= 1.0) || !(mu >= 0.0) || d == 0) {
        throw std::invalid_argument("sufficient_samples: inputs out of range");
    }
    if (mu == 0.0) {
        return 0.0;
    }
    const double cells = mu / std::pow(disp_bar, static_cast<double>(d));
    return cells * std::log(cells / (1.0 - p_bar));
}

double prm_star_joint_samples(const GainInputs& g) {
    g.validate();
    return sufficient_samples(g.mu, g.d_i * g.n_agents, g.disp_bar, g.p_bar);
}

double fact_prm_star_samples(const GainInputs& g) {
    g.validate();
    const double agents = static_cast<double>(g.n_agents);
    const double joint_part = sufficient_samples((1.0 - g.f) * g.mu, g.d_i * g.n_agents, g.disp_bar, g.p_bar);
    const double agent_measure = std::pow(g.f * g.mu, 1.0 / agents);
    const double agent_part = sufficient_samples(agent_measure, g.d_i, g.disp_bar, std::pow(g.p_bar, 1.0 / agents));
    return joint_part + agent_part;
}

GainReport factorization_gain(const GainInputs& g) {
    g.validate();
    GainReport r;
    r.n_joint = prm_star_joint_samples(g);
    r.n_fact = fact_prm_star_samples(g);
    r.gain_exact = 1.0 - r.n_fact / r.n_joint;

    const double joint_dim = static_cast<double>(g.d_i * g.n_agents);
    const double log_joint = std::log(g.mu / (std::pow(g.disp_bar, joint_dim) * (1.0 - g.p_bar)));
    const double one_minus_f = 1.0 - g.f;
    const double spill = one_minus_f > 0.0 ? one_minus_f * std::log(one_minus_f) : 0.0;
    r.gain_asymptotic = g.f - spill / log_joint;

    const double agents = static_cast<double>(g.n_agents);
    const double joint_arg = one_minus_f * g.mu / (std::pow(g.disp_bar, joint_dim) * (1.0 - g.p_bar));
    const double agent_arg = std::pow(g.f * g.mu, 1.0 / agents) /
                             (std::pow(g.disp_bar, static_cast<double>(g.d_i)) * (1.0 - std::pow(g.p_bar, 1.0 / agents)));
    r.asymptotic_regime = (one_minus_f == 0.0 || joint_arg > 1.0) && (g.f == 0.0 || agent_arg > 1.0) &&
                          r.n_fact <= r.n_joint;
    return r;
}

double linf_dispersion(std::span<const std::vector<double>> points, std::size_t grid_resolution) {
    if (points.empty()) {
        throw std::invalid_argument("dispersion of an empty pointset");
    }
    if (grid_resolution == 0) {
        throw std::invalid_argument("grid resolution must be positive");
    }
    const std::size_t d = points.front().size();
    if (d == 0 || d > 3) {
        throw std::invalid_argument("dispersion estimator supports dimensions 1 to 3");
    }
    for (const auto& p : points) {
        if (p.size() != d) {
            throw std::invalid_argument("pointset mixes dimensions");
        }
    }
    const std::size_t per_axis = grid_resolution + 1;
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) {
        total *= per_axis;
    }
    const double step = 1.0 / static_cast<double>(grid_resolution);
    std::vector<double> g(d);
    double worst = 0.0;
    for (std::size_t cell = 0; cell < total; ++cell) {
        std::size_t rest = cell;
        for (std::size_t k = 0; k < d; ++k) {
            g[k] = static_cast<double>(rest % per_axis) * step;
            rest /= per_axis;
        }
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : points) {
            double dist = 0.0;
            for (std::size_t k = 0; k < d && dist < nearest; ++k) {
                dist = std::max(dist, std::abs(p[k] - g[k]));
            }
            nearest = std::min(nearest, dist);
            if (nearest <= worst) {
                break;  // cannot raise the supremum
            }
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

EpsilonComposition epsilon_composition_check(std::span<const double> costs, std::span<const double> optimal_costs) {
    if (costs.size() != optimal_costs.size() || costs.empty()) {
        throw std::invalid_argument("cost vectors must be non-empty and of equal length");
    }
    EpsilonComposition r;
    double excess = 0.0;
    double sum_opt = 0.0;
    r.epsilon_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < costs.size(); ++i) {
        if (!(optimal_costs[i] > 0.0)) {
            throw std::invalid_argument("optimal costs must be positive");
        }
        if (costs[i] < optimal_costs[i]) {
            throw std::invalid_argument("a cost is below its optimum");
        }
        excess += costs[i] - optimal_costs[i];
        sum_opt += optimal_costs[i];
        r.epsilon_max = std::max(r.epsilon_max, (costs[i] - optimal_costs[i]) / optimal_costs[i]);
    }
    r.epsilon_joint = excess / sum_opt;
    return r;
}

EpsilonComposition epsilon_concatenation_check(std::span<const double> segment_costs,
                                               std::span<const double> optimal_segment_costs) {
    return epsilon_composition_check(segment_costs, optimal_segment_costs);
}

}  // namespace factplan
