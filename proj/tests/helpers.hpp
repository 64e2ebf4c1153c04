#pragma once

#include "lawn/association.hpp"
#include "lawn/objective.hpp"
#include "lawn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lawn::testing {

// Feasible decision: random injective association, random powers with
// sum <= p_max, and random collision-free positions.
inline Decision random_decision(const Problem& prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int M = prob.n_uav(), K = prob.n_robot();
    std::vector<int> uavs(M);
    std::iota(uavs.begin(), uavs.end(), 0);
    std::shuffle(uavs.begin(), uavs.end(), rng);
    Decision d;
    d.theta = assignment_matrix(std::vector<int>(uavs.begin(), uavs.begin() + K), M);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    d.p.resize(M);
    for (int m = 0; m < M; ++m) d.p(m) = u(rng);
    d.p *= prob.p_max() * std::uniform_real_distribution<double>(0.3, 1.0)(rng) / d.p.sum();
    d.q = random_positions(prob.geometry(), mix_seed(seed, 99));
    return d;
}

// Redraws until every robot's plant is stabilized, which the stability
// constraint requires of a feasible decision.
inline Decision stable_decision(const Problem& prob, std::uint64_t seed) {
    for (std::uint64_t k = 0; k < 1000; ++k) {
        Decision d = random_decision(prob, mix_seed(seed, k));
        if (evaluate(d, prob.with_stability(false)).stable) return d;
    }
    throw SolverError("stable_decision: no stabilizing draw");
}

// Relative agreement with an absolute floor for tiny magnitudes.
inline bool close(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

// Scenario with explicit entropy rates so plants do not depend on the seed.
inline Scenario fixed_plant_scenario(std::vector<double> g) {
    Scenario s;
    s.control.entropy_rates = std::move(g);
    return s;
}

}  // namespace lawn::testing
