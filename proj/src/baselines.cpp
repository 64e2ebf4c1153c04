#include "lawn/baselines.hpp"

#include "lawn/association.hpp"

#include <algorithm>
#include <cmath>

namespace lawn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd water_filling_powers(const VectorXd& gains, double noise, double p_max) {
    if ((gains.array() <= 0.0).any()) throw ValidationError("water_filling_powers: gains must be positive");
    const VectorXd floor = noise / gains.array();
    const auto fill = [&](double level) { return (level - floor.array()).cwiseMax(0.0).matrix().eval(); };
    // Bisection on the water level 1/nu.
    double lo = floor.minCoeff();
    double hi = floor.maxCoeff() + p_max;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (fill(mid).sum() > p_max ? hi : lo) = mid;
    }
    VectorXd p = fill(0.5 * (lo + hi));
    if (p.sum() > 0.0) p *= p_max / p.sum();  // absorb the bisection residual
    return p;
}

SolveReport equal_power(const Problem& prob, std::uint64_t seed) {
    BlockRules rules;
    rules.power = [](const Decision& d, const Problem&) { return d.p; };
    auto rep = solve(prob, initial_decision(prob, seed), rules);
    rep.scheme = "equal_power";
    return rep;
}

SolveReport random_positioning(const Problem& prob, std::uint64_t seed) {
    BlockRules rules;
    rules.positions = [](const Decision& d, const Problem&) { return d.q; };
    auto rep = solve(prob, initial_decision(prob, seed), rules);
    rep.scheme = "random_positioning";
    return rep;
}

SolveReport water_filling(const Problem& prob, std::uint64_t seed) {
    BlockRules rules;
    rules.association = [](const Decision& d, const Problem& pr) {
        return nearest_association(d.q, pr.geometry().robots);
    };
    rules.power = [](const Decision& d, const Problem& pr) {
        const int M = pr.n_uav();
        const auto& robots = pr.geometry().robots;
        std::vector<int> served;
        std::vector<double> gains;
        for (int m = 0; m < M; ++m)
            for (int k = 0; k < pr.n_robot(); ++k)
                if (d.theta(m, k) == 1.0) {
                    served.push_back(m);
                    gains.push_back(channel_gain(d.q[m], robots[k], pr.rf().alpha0));
                }
        VectorXd p = VectorXd::Zero(M);
        if (served.empty()) return VectorXd::Constant(M, pr.p_max() / M).eval();
        const VectorXd levels = water_filling_powers(
            Eigen::Map<const VectorXd>(gains.data(), static_cast<Eigen::Index>(gains.size())), pr.rf().noise_comm,
            pr.p_max());
        for (std::size_t i = 0; i < served.size(); ++i) p(served[i]) = levels(static_cast<Eigen::Index>(i));
        // Whatever the assigned links leave unused is shared by the idle UAVs.
        const double residual = pr.p_max() - p.sum();
        const int idle = M - static_cast<int>(served.size());
        if (residual > 0.0 && idle > 0)
            for (int m = 0; m < M; ++m)
                if (std::find(served.begin(), served.end(), m) == served.end()) p(m) = residual / idle;
        return p;
    };
    Decision init = initial_decision(prob, seed);
    init.p = rules.power(init, prob);
    auto rep = solve(prob, init, rules);
    rep.scheme = "water_filling";
    return rep;
}

SolveReport sensing_only(const Problem& prob, std::uint64_t seed) {
    Scenario scen = prob.scenario();
    scen.rf.p_max *= 0.5;
    scen.weights.eta = 0.0;
    const Problem half = Problem(scen).with_stability(false);
    auto rep = solve(half, initial_decision(half, seed));
    rep.scheme = "sensing_only";
    return rep;
}

const std::vector<std::string>& scheme_names() {
    static const std::vector<std::string> names{"proposed", "equal_power", "random_positioning", "water_filling",
                                                "sensing_only"};
    return names;
}

SolveReport run_scheme(const std::string& name, const Problem& prob, std::uint64_t seed) {
    if (name == "proposed") {
        auto rep = solve(prob, initial_decision(prob, seed));
        rep.seed = seed;
        return rep;
    }
    SolveReport rep;
    if (name == "equal_power") {
        rep = equal_power(prob, seed);
    } else if (name == "random_positioning") {
        rep = random_positioning(prob, seed);
    } else if (name == "water_filling") {
        rep = water_filling(prob, seed);
    } else if (name == "sensing_only") {
        rep = sensing_only(prob, seed);
    } else {
        throw ValidationError("unknown scheme '" + name + "'");
    }
    rep.seed = seed;
    return rep;
}

}  // namespace lawn
