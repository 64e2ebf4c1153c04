#include "lawn/assignment.hpp"

#include "lawn/common.hpp"

#include <cmath>
#include <limits>

namespace lawn {

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    if (n > m) throw ValidationError("min_cost_assignment: more rows than columns");
    if (!cost.allFinite()) throw ValidationError("min_cost_assignment: non-finite cost");
    if (n == 0) return {};

    // 1-based potentials formulation; column 0 is a virtual sink.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> owner(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        owner[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = owner[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        do {
            const int j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> cols(n, -1);
    for (int j = 1; j <= m; ++j)
        if (owner[j] != 0) cols[owner[j] - 1] = j - 1;
    return cols;
}

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& cols) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i) sum += cost(static_cast<Eigen::Index>(i), cols[i]);
    return sum;
}

std::vector<int> lexicographic_min_cost_assignment(const Eigen::MatrixXd& cost, double tol) {
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    auto best = min_cost_assignment(cost);
    const double opt = assignment_cost(cost, best);
    const double slack = tol * (1.0 + std::abs(opt));
    // Prohibitive but finite so the Hungarian arithmetic stays exact enough.
    const double big = 1.0 + 4.0 * (cost.cwiseAbs().maxCoeff() + 1.0) * (n + 1);

    Eigen::MatrixXd fixed = cost;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (fixed(i, j) >= big) continue;
            Eigen::MatrixXd trial = fixed;
            for (int jj = 0; jj < m; ++jj)
                if (jj != j) trial(i, jj) = big;
            for (int ii = 0; ii < n; ++ii)
                if (ii != i) trial(ii, j) = big;
            auto cand = min_cost_assignment(trial);
            if (assignment_cost(cost, cand) <= opt + slack && assignment_cost(trial, cand) < big) {
                fixed = trial;
                best = std::move(cand);
                break;
            }
        }
    }
    return best;
}

}  // namespace lawn
