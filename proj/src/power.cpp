#include "lawn/power.hpp"

#include <algorithm>
#include <functional>

namespace lawn {

using Eigen::VectorXd;

VectorXd project_capped_simplex(const VectorXd& v, double p_max) {
    if (!(p_max > 0.0)) throw ValidationError("project_capped_simplex: p_max must be positive");
    VectorXd clipped = v.cwiseMax(0.0);
    if (clipped.sum() <= p_max) return clipped;

    // Largest tau with sum max(v - tau, 0) = p_max, from the sorted values.
    std::vector<double> sorted(v.data(), v.data() + v.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double prefix = 0.0;
    double tau = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        prefix += sorted[i];
        const double t = (prefix - p_max) / static_cast<double>(i + 1);
        if (i + 1 == sorted.size() || sorted[i + 1] <= t) {
            tau = t;
            break;
        }
    }
    return (v.array() - tau).cwiseMax(0.0).matrix();
}

PowerResult solve_power(const Decision& dec, const Problem& prob, const PgdOptions& opts) {
    const double p_max = prob.p_max();
    Decision cur = dec;
    cur.p = project_capped_simplex(dec.p, p_max);
    double value = objective_value(cur, prob);

    PowerResult out;
    out.trace.push_back(value);
    double rho = opts.step0_frac * p_max;
    const double tol = opts.tol_frac * p_max;
    for (int it = 0; it < opts.max_iter; ++it) {
        const VectorXd g = grad_power(cur, prob);
        const double gnorm = g.norm();
        if (!(gnorm > 0.0)) break;

        Decision trial = cur;
        double scale = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            trial.p = project_capped_simplex(cur.p - scale * rho / gnorm * g, p_max);
            const double trial_value = objective_value(trial, prob);
            if (!opts.armijo || trial_value <= value + 1e-4 * g.dot(trial.p - cur.p)) {
                accepted = true;
                value = trial_value;
                break;
            }
            scale *= 0.5;
        }
        rho /= 1.0 + opts.rho_hat;
        out.iterations = it + 1;
        if (!accepted) break;  // no descent along the projected arc

        const double moved = (trial.p - cur.p).norm();
        cur.p = trial.p;
        out.trace.push_back(value);
        if (moved < tol) break;
    }
    out.p = cur.p;
    return out;
}

}  // namespace lawn
