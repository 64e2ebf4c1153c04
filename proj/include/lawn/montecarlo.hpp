#pragma once

#include "lawn/objective.hpp"

#include <cstdint>

namespace lawn {

// d_hat_m = |q_m - s| + N(0, sigma_m^2), sigma_m^2 from the range-noise model.
// With noiseless set the exact distances are returned.
[[nodiscard]] Eigen::VectorXd simulate_ranges(const Decision& dec, const Vec3& s, const RfParams& rf,
                                              std::uint64_t seed, bool noiseless = false);

struct WlsResult {
    Vec3 estimate = Vec3::Zero();
    bool converged = false;
    int iterations = 0;
};

// Weighted Gauss-Newton on sum_m (d_hat_m - |q_m - s|)^2 / sigma_m^2 with step
// halving; at most 100 steps. Fails on singular normal equations.
[[nodiscard]] WlsResult localize_wls(const Eigen::VectorXd& d_hat, const Positions& uavs,
                                     const Eigen::VectorXd& sigma2, const Vec3& init);

struct RmseResult {
    double rmse = 0.0;
    double crb_sqrt = 0.0;
    int trials = 0;
    int failures = 0;
};

// Fixed offset of the estimator's starting point from the true target.
[[nodiscard]] Vec3 wls_init_offset();

// Trials run in parallel on independent streams derived from (seed, trial);
// the reduction is in trial order. Throws SolverError if every trial fails.
[[nodiscard]] RmseResult rmse_experiment(const Decision& dec, const Problem& prob, int trials, std::uint64_t seed,
                                         unsigned workers = 0);

}  // namespace lawn
