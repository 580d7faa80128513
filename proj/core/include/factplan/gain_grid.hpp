#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "factplan/analysis.hpp"

namespace factplan {

/// Cartesian grid of gain-model inputs.
///
/// Text form: `key=values` clauses separated by `;`. Values are either a
/// comma list (`agents=2,3,5`) or an inclusive range `lo:hi:step`. Keys: f,
/// agents, disp, p, di, mu. Omitted keys keep the GainInputs defaults.
struct GainGrid {
    std::vector<double> f{0.0};
    std::vector<std::size_t> agents{2};
    std::vector<double> disp{0.5};
    std::vector<double> p{0.9};
    std::vector<std::size_t> d_i{2};
    std::vector<double> mu{1.0};
};

GainGrid parse_gain_grid(std::string_view spec);

inline constexpr const char* kGainHeader = "f,agents,disp,p,n_joint,n_fact,gain_exact,gain_asymptotic";

/// One row per grid point, iterating agents, disp, p, d_i, mu, then f.
/// Returns the number of rows written.
std::size_t write_gain_csv(const GainGrid& grid, std::ostream& out);

}  // namespace factplan
