#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace factplan {

/// Inputs of the PRM* sample-complexity model.
struct GainInputs {
    double mu = 1.0;         ///< free-space measure
    double disp_bar = 0.5;   ///< target l-infinity dispersion, in (0, 1]
    double p_bar = 0.9;      ///< probability level, in [0, 1)
    std::size_t d_i = 2;     ///< per-agent dimension
    std::size_t n_agents = 2;
    double f = 0.0;          ///< factorization factor, in [0, 1]

    void validate() const;
};

struct GainReport {
    double n_joint = 0.0;
    double n_fact = 0.0;
    double gain_exact = 0.0;
    double gain_asymptotic = 0.0;
    /// Both sample counts are in the regime where their log arguments exceed 1.
    bool asymptotic_regime = true;
};

/// Uniform samples sufficient for l-infinity dispersion <= disp_bar with
/// probability >= p_bar on a region of measure mu and dimension d:
/// (mu / disp^d) log(mu / (disp^d (1 - p))). Real-valued; callers ceil.
/// Throws DivergenceError for p_bar = 1.
double sufficient_samples(double mu, std::size_t d, double disp_bar, double p_bar);

double prm_star_joint_samples(const GainInputs& g);

/// Samples for the factorized PRM*: the non-factorizable joint region plus one
/// per-agent problem at the strengthened level p_bar^(1/|A|). A term whose
/// measure is zero contributes 0 (0 log 0 := 0).
double fact_prm_star_samples(const GainInputs& g);

GainReport factorization_gain(const GainInputs& g);

/// Sup over the (resolution+1)^d grid points of [0,1]^d of the l-infinity
/// distance to the nearest point. Converges from below as resolution grows.
double linf_dispersion(std::span<const std::vector<double>> points, std::size_t grid_resolution);

struct EpsilonComposition {
    double epsilon_joint = 0.0;
    double epsilon_max = 0.0;
    /// Up to rounding in the weighted average (equal per-agent epsilons).
    [[nodiscard]] bool holds() const { return epsilon_joint <= epsilon_max + 1e-12 * (1.0 + std::abs(epsilon_max)); }
};

/// Relative suboptimality of a product of per-agent solutions versus the worst
/// per-agent suboptimality. Requires positive optimal costs.
EpsilonComposition epsilon_composition_check(std::span<const double> costs, std::span<const double> optimal_costs);

/// Same bound for a path concatenated from segments.
EpsilonComposition epsilon_concatenation_check(std::span<const double> segment_costs,
                                               std::span<const double> optimal_segment_costs);

}  // namespace factplan
