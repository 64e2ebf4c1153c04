#include "lawn/placement.hpp"

#include "lawn/lp.hpp"

#include <algorithm>
#include <cmath>

namespace lawn {

std::vector<CollisionCut> linearize_collision(const Positions& anchor, double d_min) {
    std::vector<CollisionCut> cuts;
    const int M = static_cast<int>(anchor.size());
    for (int m = 0; m < M; ++m) {
        for (int r = m + 1; r < M; ++r) {
            const Vec3 a = anchor[m] - anchor[r];
            const double n2 = a.squaredNorm();
            if (n2 == 0.0) throw ValidationError("linearize_collision: coincident anchor pair");
            if (std::sqrt(n2) < d_min - 1e-9) throw ValidationError("linearize_collision: anchor violates d_min");
            cuts.push_back({m, r, a, n2 + d_min * d_min});
        }
    }
    return cuts;
}

ScaStep sca_step(const Decision& dec, const Problem& prob, double trust) {
    const auto& geo = prob.geometry();
    const int M = prob.n_uav();
    const int dim = geo.fixed_altitude() ? 2 : 3;
    const Positions grad = grad_positions(dec, prob);
    const auto cuts = linearize_collision(dec.q, geo.d_min);

    // Variables y = y+ - y-, laid out as [y+ (M*dim), y- (M*dim)].
    const int nv = M * dim;
    const auto idx = [dim](int m, int i) { return m * dim + i; };
    Eigen::VectorXd c(2 * nv);
    Eigen::VectorXd lo(nv), hi(nv);
    const Interval* box[3] = {&geo.area_x, &geo.area_y, &geo.altitude};
    for (int m = 0; m < M; ++m) {
        for (int i = 0; i < dim; ++i) {
            c(idx(m, i)) = grad[m](i);
            c(nv + idx(m, i)) = -grad[m](i);
            hi(idx(m, i)) = std::max(0.0, std::min(trust, box[i]->hi - dec.q[m](i)));
            lo(idx(m, i)) = std::min(0.0, std::max(-trust, box[i]->lo - dec.q[m](i)));
        }
    }

    const int rows = 2 * nv + static_cast<int>(cuts.size());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(rows, 2 * nv);
    Eigen::VectorXd h(rows);
    for (int v = 0; v < nv; ++v) {
        G(v, v) = 1.0;
        h(v) = hi(v);
        G(nv + v, nv + v) = 1.0;
        h(nv + v) = -lo(v);
    }
    // -2 a^T (y_m - y_r) <= |a|^2 - d_min^2
    for (std::size_t j = 0; j < cuts.size(); ++j) {
        const auto& cut = cuts[j];
        const int row = 2 * nv + static_cast<int>(j);
        for (int i = 0; i < dim; ++i) {
            const double w = -2.0 * cut.normal(i);
            G(row, idx(cut.m, i)) += w;
            G(row, nv + idx(cut.m, i)) -= w;
            G(row, idx(cut.r, i)) -= w;
            G(row, nv + idx(cut.r, i)) += w;
        }
        h(row) = std::max(0.0, cut.normal.squaredNorm() - geo.d_min * geo.d_min);
    }

    const auto lp = solve_lp(c, G, h);
    if (!lp.optimal) throw SolverError("sca_step: trust-region LP did not reach optimality");

    ScaStep out;
    out.q = dec.q;
    double moved = 0.0;
    for (int m = 0; m < M; ++m) {
        for (int i = 0; i < dim; ++i) {
            const double y = lp.x(idx(m, i)) - lp.x(nv + idx(m, i));
            out.q[m](i) = std::clamp(dec.q[m](i) + y, box[i]->lo, box[i]->hi);
            moved = std::max(moved, std::abs(y));
        }
    }
    out.predicted = std::max(0.0, -lp.value);

    const double before = objective_value(dec, prob);
    if (moved == 0.0) {
        out.accepted = true;
        out.value = before;
        return out;
    }
    for (int m = 0; m < M; ++m)
        for (int r = m + 1; r < M; ++r)
            if ((out.q[m] - out.q[r]).norm() < geo.d_min - 1e-9)
                throw SolverError("sca_step: linearized collision cut admitted an infeasible point");

    Decision trial = dec;
    trial.q = out.q;
    const double after = objective_value(trial, prob);
    out.accepted = after < before;
    out.value = out.accepted ? after : before;
    if (!out.accepted) out.q = dec.q;
    return out;
}

PositionResult solve_positions(const Decision& dec, const Problem& prob, const ScaOptions& opts) {
    PositionResult out;
    Decision cur = dec;
    double value = objective_value(cur, prob);
    out.trace.push_back(value);
    double trust = opts.trust0;
    while (out.iterations < opts.max_iter && trust >= opts.trust_min) {
        ++out.iterations;
        const auto step = sca_step(cur, prob, trust);
        if (!step.accepted) {
            trust *= opts.shrink;
            continue;
        }
        const bool moved = step.q != cur.q;
        const double gain = value - step.value;
        cur.q = step.q;
        if (!moved) break;
        ++out.accepted;
        out.trace.push_back(step.value);
        value = step.value;
        if (gain <= opts.tol * std::max(std::abs(value), 1e-12)) break;
    }
    out.q = cur.q;
    return out;
}

}  // namespace lawn
