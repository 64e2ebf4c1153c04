#pragma once

#include "lawn/common.hpp"
#include "lawn/scenario.hpp"

namespace lawn {

// Free-space LoS gain alpha0 / |q - u|^2. Throws ValidationError for coincident points.
[[nodiscard]] double channel_gain(const Vec3& q, const Vec3& u, double alpha0);

// SINR of the link UAV m -> robot k with every other UAV interfering.
[[nodiscard]] double sinr(int m, int k, const Eigen::VectorXd& p, const Positions& uavs,
                          const Positions& robots, double alpha0, double noise);

// Gaussian tail Q(x) = P(N(0,1) > x).
[[nodiscard]] double gaussian_q(double x);

// Q^-1(eps) for eps in (0, 1).
[[nodiscard]] double inverse_gaussian_q(double eps);

// Finite-blocklength rate in bits per channel use, clamped at zero.
[[nodiscard]] double fbl_rate(double gamma, double blocklength, double eps,
                              RateConvention convention = RateConvention::bits);

// d fbl_rate / d gamma; zero where the clamp is active.
[[nodiscard]] double fbl_rate_slope(double gamma, double blocklength, double eps,
                                    RateConvention convention = RateConvention::bits);

// Per-link quantities; rows index UAVs, columns robots.
struct LinkState {
    Eigen::MatrixXd gains;
    Eigen::MatrixXd sinr;
    Eigen::MatrixXd rate;
};

[[nodiscard]] LinkState link_state(const Eigen::VectorXd& p, const Positions& uavs,
                                   const Positions& robots, const RfParams& rf);

// X_k = c_use * sum_m theta(m,k) R(m,k). Throws ValidationError if an entry
// leaves [0,1] or a row or column sum exceeds 1.
[[nodiscard]] Eigen::VectorXd throughput_per_robot(const Eigen::MatrixXd& theta,
                                                   const Eigen::MatrixXd& rates,
                                                   double uses_per_step);

// Relaxed association polytope: 0 <= theta <= 1, row sums <= 1, column sums = 1.
[[nodiscard]] bool association_feasible(const Eigen::MatrixXd& theta, double tol = 1e-9);

}  // namespace lawn
