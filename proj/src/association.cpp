#include "lawn/association.hpp"

#include "lawn/assignment.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace lawn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd assignment_matrix(const std::vector<int>& uav_of_robot, int n_uav) {
    MatrixXd theta = MatrixXd::Zero(n_uav, static_cast<Eigen::Index>(uav_of_robot.size()));
    for (std::size_t k = 0; k < uav_of_robot.size(); ++k) theta(uav_of_robot[k], static_cast<Eigen::Index>(k)) = 1.0;
    return theta;
}

namespace {

VectorXd throughput(const MatrixXd& theta, const MatrixXd& rates, double c_use) {
    return c_use * (theta.array() * rates.array()).colwise().sum().transpose();
}

bool is_binary(const MatrixXd& theta) { return ((theta.array() == 0.0) || (theta.array() == 1.0)).all(); }

// The penalized, linearized subproblem along the segment theta + gamma * dir.
struct Subproblem {
    const Problem& prob;
    const MatrixXd& rates;
    const MatrixXd& anchor;
    double mu;
    double scale;  // eta / psi_c
    double c_use;

    [[nodiscard]] double value(const MatrixXd& theta) const {
        const VectorXd x = throughput(theta, rates, c_use);
        double v = 0.0;
        if (scale > 0.0)
            for (int k = 0; k < x.size(); ++k) v += scale * prob.robot_cost_extended(k, x(k));
        v += mu * (theta.sum() - 2.0 * (anchor.array() * theta.array()).sum() + anchor.squaredNorm());
        return v;
    }

    [[nodiscard]] MatrixXd gradient(const MatrixXd& theta) const {
        const VectorXd x = throughput(theta, rates, c_use);
        MatrixXd g = (mu * (1.0 - 2.0 * anchor.array())).matrix();
        if (scale > 0.0)
            for (int k = 0; k < x.size(); ++k)
                g.col(k) += scale * prob.robot_cost_extended_slope(k, x(k)) * c_use * rates.col(k);
        return g;
    }

    // d/dgamma of value(theta + gamma * dir).
    [[nodiscard]] double directional(const VectorXd& x, const VectorXd& dx, double linear, double gamma) const {
        double d = linear;
        if (scale > 0.0)
            for (int k = 0; k < x.size(); ++k) d += scale * prob.robot_cost_extended_slope(k, x(k) + gamma * dx(k)) * dx(k);
        return d;
    }
};

}  // namespace

double association_cost(const MatrixXd& theta, const MatrixXd& rates, const Problem& prob) {
    const VectorXd x = throughput(theta, rates, prob.rf().uses_per_step);
    double sum = 0.0;
    for (int k = 0; k < x.size(); ++k) sum += prob.robot_cost_extended(k, x(k));
    return sum;
}

RelaxedResult solve_relaxed_subproblem(const MatrixXd& theta_anchor, double mu, const Decision& dec,
                                       const Problem& prob, const PenaltyDcOptions& opts) {
    if (!association_feasible(theta_anchor)) throw ValidationError("solve_relaxed_subproblem: infeasible anchor");
    const auto links = link_state(dec.p, dec.q, prob.geometry().robots, prob.rf());
    const double c_use = prob.rf().uses_per_step;
    const Subproblem sub{prob, links.rate, theta_anchor, mu, prob.eta() / prob.psi_c(), c_use};

    RelaxedResult out;
    MatrixXd theta = theta_anchor;
    double value = sub.value(theta);
    for (int it = 0; it < opts.inner_max; ++it) {
        const MatrixXd g = sub.gradient(theta);
        const auto cols = min_cost_assignment(g.transpose());
        const MatrixXd vertex = assignment_matrix(cols, prob.n_uav());
        const MatrixXd dir = vertex - theta;
        out.gap = -(g.array() * dir.array()).sum();
        if (out.gap <= opts.inner_tol * (1.0 + std::abs(value))) {
            out.converged = true;
            break;
        }
        // Exact line search: the objective is convex along the segment.
        const VectorXd x = throughput(theta, links.rate, c_use);
        const VectorXd dx = throughput(dir, links.rate, c_use);
        const double linear = mu * ((1.0 - 2.0 * theta_anchor.array()) * dir.array()).sum();
        double step = 1.0;
        if (sub.directional(x, dx, linear, 1.0) > 0.0) {
            double lo = 0.0, hi = 1.0;
            for (int b = 0; b < 100 && hi - lo > 1e-16; ++b) {
                const double mid = 0.5 * (lo + hi);
                (sub.directional(x, dx, linear, mid) > 0.0 ? hi : lo) = mid;
            }
            step = lo;
        }
        if (step <= 0.0) {
            out.converged = true;
            break;
        }
        MatrixXd next = theta + step * dir;
        const double next_value = sub.value(next);
        // Guard against round-off making the step ascend.
        if (next_value > value) {
            out.converged = true;
            break;
        }
        theta = std::move(next);
        value = next_value;
        out.trace.push_back(value);
        out.iterations = it + 1;
    }
    out.theta = theta;
    out.objective = value;
    return out;
}

MatrixXd round_and_repair(const MatrixXd& theta_relaxed) {
    const auto cols = lexicographic_min_cost_assignment(-theta_relaxed.transpose());
    return assignment_matrix(cols, static_cast<int>(theta_relaxed.rows()));
}

AssociationResult solve_association(const Decision& dec, const Problem& prob, const PenaltyDcOptions& opts) {
    const auto links = link_state(dec.p, dec.q, prob.geometry().robots, prob.rf());
    const double scale = prob.eta() / prob.psi_c();

    AssociationResult out;
    MatrixXd anchor = dec.theta;
    if (!association_feasible(anchor)) anchor = nearest_association(dec.q, prob.geometry().robots);

    MatrixXd best;
    double best_cost = std::numeric_limits<double>::infinity();
    const auto consider = [&](const MatrixXd& cand) {
        const double c = association_cost(cand, links.rate, prob);
        if (c < best_cost) {
            best_cost = c;
            best = cand;
        }
    };
    if (is_binary(anchor)) consider(anchor);

    double mu = opts.mu0;
    double prev = 0.0;
    MatrixXd theta = anchor;
    for (int t = 1; t <= opts.max_outer; ++t) {
        const auto r = solve_relaxed_subproblem(anchor, mu, dec, prob, opts);
        if (!r.converged) out.inner_warning = true;
        theta = r.theta;
        const double residual = (theta.array() - theta.array().square()).sum();
        const double omega = scale * association_cost(theta, links.rate, prob) + mu * residual;
        out.trace.push_back(omega);
        out.outer_iterations = t;
        consider(round_and_repair(theta));
        if (t > 1 && std::abs(omega - prev) <= opts.tol * std::abs(prev) && residual <= 1e-3) break;
        prev = omega;
        anchor = theta;
        mu = std::min(opts.growth * mu, opts.mu_max);
    }
    out.relaxed = theta;
    out.penalty_residual = (theta.array() - theta.array().square()).sum();
    out.theta = best;
    return out;
}

MatrixXd exhaustive_oracle(const Decision& dec, const Problem& prob, long long* enumerated) {
    const int M = prob.n_uav();
    const int K = prob.n_robot();
    double count = 1.0;
    for (int i = 0; i < K; ++i) count *= M - i;
    if (count > 1e6) throw ValidationError("exhaustive_oracle: more than 10^6 assignments");
    const auto links = link_state(dec.p, dec.q, prob.geometry().robots, prob.rf());

    std::vector<int> pick(K, -1), best;
    std::vector<char> used(M, 0);
    double best_cost = std::numeric_limits<double>::infinity();
    long long n = 0;
    const std::function<void(int)> recurse = [&](int k) {
        if (k == K) {
            ++n;
            const double c = association_cost(assignment_matrix(pick, M), links.rate, prob);
            if (c < best_cost || best.empty()) {
                best_cost = c;
                best = pick;
            }
            return;
        }
        for (int m = 0; m < M; ++m) {
            if (used[m]) continue;
            used[m] = 1;
            pick[k] = m;
            recurse(k + 1);
            used[m] = 0;
        }
    };
    recurse(0);
    if (enumerated) *enumerated = n;
    return assignment_matrix(best, M);
}

MatrixXd nearest_association(const Positions& uavs, const Positions& robots) {
    MatrixXd dist(robots.size(), uavs.size());
    for (std::size_t k = 0; k < robots.size(); ++k)
        for (std::size_t m = 0; m < uavs.size(); ++m)
            dist(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) = (uavs[m] - robots[k]).norm();
    return assignment_matrix(lexicographic_min_cost_assignment(dist), static_cast<int>(uavs.size()));
}

}  // namespace lawn
