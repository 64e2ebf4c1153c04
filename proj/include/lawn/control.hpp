#pragma once

#include "lawn/common.hpp"

#include <cstdint>
#include <utility>

namespace lawn {

// One robot's linear plant x+ = A x + B z + v, y = C x + w with quadratic
// weights Q (state) and R (input).
struct PlantSpec {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;
    Eigen::MatrixXd Q;
    Eigen::MatrixXd R;
    Eigen::MatrixXd Sigma_v;  // process noise covariance
    Eigen::MatrixXd Sigma_w;  // observation noise covariance

    [[nodiscard]] int state_dim() const { return static_cast<int>(A.rows()); }
    [[nodiscard]] int input_dim() const { return static_cast<int>(B.cols()); }
    [[nodiscard]] int output_dim() const { return static_cast<int>(C.rows()); }
};

// A = 2^(g/iota) I, B = C = I, Q = q I, R = r I, noises scaled identities.
[[nodiscard]] PlantSpec scaled_identity_plant(int iota, double entropy_bits, double sigma_v,
                                              double sigma_w, double q_weight = 1.0,
                                              double r_weight = 0.0);

// Throws ValidationError on inconsistent dimensions or asymmetric/indefinite weights.
void validate(const PlantSpec& spec);

struct RiccatiOptions {
    double tol = 1e-12;  // relative to 1 + ||X||_F
    int max_iter = 100000;
};

struct CostRiccati {
    Eigen::MatrixXd S;
    Eigen::MatrixXd M;
};

struct KalmanSteadyState {
    Eigen::MatrixXd P;      // one-step prediction covariance
    Eigen::MatrixXd K;      // filter gain
    Eigen::MatrixXd Sigma;  // filtered covariance
    Eigen::MatrixXd N;      // A Sigma A^T - Sigma + Sigma_v
};

struct PlantDerived {
    Eigen::MatrixXd S, M, P, K, Sigma, N;
    double g = 0.0;      // entropy rate, bits per control step
    double omega = 0.0;  // iota * det(N M)^(1/iota)
    double b_min = 0.0;  // cost floor under unconstrained communication
    int iota = 0;
};

// S = Q + A^T (S - M) A, M = S B (R + B^T S B)^-1 B^T S, iterated from S = Q.
[[nodiscard]] CostRiccati solve_cost_riccati(const PlantSpec& spec, const RiccatiOptions& opts = {});

// Steady-state Kalman filter, iterated from P = Sigma_v.
[[nodiscard]] KalmanSteadyState solve_kalman_steady(const PlantSpec& spec,
                                                    const RiccatiOptions& opts = {});

// Residual norms of the four fixed-point equations at a candidate solution.
struct RiccatiResiduals {
    double cost_s = 0.0;    // S - Q - A^T (S - M) A
    double cost_m = 0.0;    // M - S B (R + B^T S B)^-1 B^T S
    double kalman_p = 0.0;  // P - (A P A^T - A K W K^T A^T + Sigma_v)
    double kalman_k = 0.0;  // K - P C^T W^-1, W = C P C^T + Sigma_w
};
[[nodiscard]] RiccatiResiduals riccati_residuals(const PlantSpec& spec, const PlantDerived& d);

[[nodiscard]] PlantDerived derive_plant(const PlantSpec& spec, const RiccatiOptions& opts = {});

// Exponent f = (2/iota)(X - g) of the closed-form cost.
[[nodiscard]] double stability_margin(const PlantDerived& d, double bits);

// b = Omega / (2^f - 1) + b_min. Throws StabilityError (robot index -1) when f <= 0.
[[nodiscard]] double lqr_cost_from_throughput(const PlantDerived& d, double bits);

// d b / d X, for the same domain.
[[nodiscard]] double lqr_cost_slope(const PlantDerived& d, double bits);

// L = g + (iota/2) log2(1 + Omega / (b_target - b_min)).
[[nodiscard]] double required_throughput(const PlantDerived& d, double b_target);

// Time-domain LQG run with the steady-state filter and LQR gain; returns the
// empirical mean of x'Qx + z'Rz over `steps` steps.
[[nodiscard]] double simulate_lqg(const PlantSpec& spec, std::size_t steps, std::uint64_t seed);

}  // namespace lawn
