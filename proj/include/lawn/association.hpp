#pragma once

#include "lawn/objective.hpp"
#include "lawn/options.hpp"

#include <vector>

namespace lawn {

// Control part of the association objective for fixed rates: sum_k b_k(X_k(theta)),
// with the finite continuation of b_k outside the stable region.
[[nodiscard]] double association_cost(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& rates,
                                      const Problem& prob);

struct RelaxedResult {
    Eigen::MatrixXd theta;
    double objective = 0.0;  // penalized, linearized objective at theta
    double gap = 0.0;        // final Frank-Wolfe duality gap
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;  // objective after every Frank-Wolfe step
};

// Frank-Wolfe on (eta/psi_c) sum_k b_k(theta) + mu sum theta - mu sum [a^2 + 2a(theta - a)],
// a = theta_anchor, over the relaxed association polytope. Starts at the anchor.
[[nodiscard]] RelaxedResult solve_relaxed_subproblem(const Eigen::MatrixXd& theta_anchor, double mu,
                                                     const Decision& dec, const Problem& prob,
                                                     const PenaltyDcOptions& opts);

struct AssociationResult {
    Eigen::MatrixXd theta;    // binary
    Eigen::MatrixXd relaxed;  // last relaxed iterate before rounding
    std::vector<double> trace;  // penalized objective per outer pass
    int outer_iterations = 0;
    double penalty_residual = 0.0;  // sum(theta - theta^2) of the relaxed iterate
    bool inner_warning = false;     // some inner solve hit inner_max
};

// Penalty-DC loop with mu <- min(A mu, mu_max). The anchor starts at dec.theta.
// Every outer iterate is rounded; the best binary candidate (including a
// binary dec.theta) under the control cost is returned.
[[nodiscard]] AssociationResult solve_association(const Decision& dec, const Problem& prob,
                                                  const PenaltyDcOptions& opts);

// Maximum-weight binary assignment using theta as weights. Ties go to the
// lowest UAV index, robots taken in order.
[[nodiscard]] Eigen::MatrixXd round_and_repair(const Eigen::MatrixXd& theta_relaxed);

// Global optimum of the control cost over all injective assignments, first in
// lexicographic order on ties. Throws ValidationError beyond 10^6 assignments.
[[nodiscard]] Eigen::MatrixXd exhaustive_oracle(const Decision& dec, const Problem& prob,
                                                long long* enumerated = nullptr);

// Each robot to a distinct UAV minimizing the summed Euclidean distance.
[[nodiscard]] Eigen::MatrixXd nearest_association(const Positions& uavs, const Positions& robots);

[[nodiscard]] Eigen::MatrixXd assignment_matrix(const std::vector<int>& uav_of_robot, int n_uav);

}  // namespace lawn
