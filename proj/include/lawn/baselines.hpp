#pragma once

#include "lawn/solver.hpp"

#include <string>
#include <vector>

namespace lawn {

// Power fixed at P_max / M; association and positions optimized.
[[nodiscard]] SolveReport equal_power(const Problem& prob, std::uint64_t seed);

// Positions fixed at random_positions(seed); association and power optimized.
[[nodiscard]] SolveReport random_positioning(const Problem& prob, std::uint64_t seed);

// Nearest-UAV association, interference-free water-filling over the assigned
// links, positions by SCA.
[[nodiscard]] SolveReport water_filling(const Problem& prob, std::uint64_t seed);

// eta = 0 at half the power budget, stability not enforced.
[[nodiscard]] SolveReport sensing_only(const Problem& prob, std::uint64_t seed);

// p_i = max(1/nu - noise / gain_i, 0) with sum p = p_max (bisection on nu).
[[nodiscard]] Eigen::VectorXd water_filling_powers(const Eigen::VectorXd& gains, double noise, double p_max);

// Runs a scheme by name: proposed, equal_power, random_positioning,
// water_filling, sensing_only. Throws ValidationError for an unknown name.
[[nodiscard]] SolveReport run_scheme(const std::string& name, const Problem& prob, std::uint64_t seed);
[[nodiscard]] const std::vector<std::string>& scheme_names();

}  // namespace lawn
