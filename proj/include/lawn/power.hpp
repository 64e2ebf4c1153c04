#pragma once

#include "lawn/objective.hpp"
#include "lawn/options.hpp"

#include <vector>

namespace lawn {

// Euclidean projection onto {p >= 0, sum p <= p_max}.
[[nodiscard]] Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double p_max);

struct PowerResult {
    Eigen::VectorXd p;
    std::vector<double> trace;  // objective at every accepted iterate, starting point first
    int iterations = 0;
};

// Projected gradient descent with normalized steps rho / |grad| and rho decaying
// by 1/(1 + rho_hat) per iteration, optionally safeguarded by Armijo backtracking.
// Starts from dec.p projected onto the feasible set.
[[nodiscard]] PowerResult solve_power(const Decision& dec, const Problem& prob, const PgdOptions& opts);

}  // namespace lawn
