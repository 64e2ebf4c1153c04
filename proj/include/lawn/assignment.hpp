#pragma once

#include <Eigen/Dense>

#include <vector>

namespace lawn {

// Min-cost assignment of every row to a distinct column (rows <= cols), via
// the Hungarian method with potentials. Returns the column chosen for each row.
[[nodiscard]] std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

// Among assignments within `tol` of the optimum, the one whose column vector
// is lexicographically smallest (row 0 first, lowest column first).
[[nodiscard]] std::vector<int> lexicographic_min_cost_assignment(const Eigen::MatrixXd& cost,
                                                                 double tol = 1e-12);

[[nodiscard]] double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& cols);

}  // namespace lawn
