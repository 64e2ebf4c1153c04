#include "lawn/lp.hpp"

#include "lawn/common.hpp"

#include <algorithm>
#include <vector>

namespace lawn {

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& G, const Eigen::VectorXd& h, int max_iter) {
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(G.rows());
    if (G.cols() != n || h.size() != m) throw ValidationError("solve_lp: dimension mismatch");
    if ((h.array() < 0.0).any()) throw ValidationError("solve_lp: right-hand side must be nonnegative");

    // Columns: n structural, m slack, then the right-hand side.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    T.topLeftCorner(m, n) = G;
    T.block(0, n, m, m).setIdentity();
    T.col(n + m).head(m) = h;
    T.row(m).head(n) = c.transpose();
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const double eps = 1e-12 * (1.0 + c.cwiseAbs().maxCoeff());
    LpResult out;
    for (; out.iterations < max_iter; ++out.iterations) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (T(m, j) < -eps) {
                enter = j;
                break;
            }
        if (enter < 0) {
            out.optimal = true;
            break;
        }
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (T(i, enter) <= 1e-12) continue;
            const double ratio = T(i, n + m) / T(i, enter);
            if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) {
            out.unbounded = true;
            break;
        }
        T.row(leave) /= T(leave, enter);
        for (int i = 0; i <= m; ++i)
            if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
        basis[leave] = enter;
    }

    out.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) out.x(basis[i]) = std::max(0.0, T(i, n + m));
    out.value = c.dot(out.x);
    return out;
}

}  // namespace lawn
