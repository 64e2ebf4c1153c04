#pragma once

#include <Eigen/Dense>

namespace lawn {

struct LpResult {
    Eigen::VectorXd x;
    double value = 0.0;
    bool optimal = false;
    bool unbounded = false;
    int iterations = 0;
};

// Dense tableau simplex for  min c^T x  s.t.  G x <= h, x >= 0, with h >= 0 so
// the origin is a feasible starting basis. Bland's rule prevents cycling.
[[nodiscard]] LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                                int max_iter = 100000);

}  // namespace lawn
