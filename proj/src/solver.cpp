#include "lawn/solver.hpp"

#include "lawn/association.hpp"
#include "lawn/placement.hpp"
#include "lawn/power.hpp"

#include <chrono>
#include <cmath>

namespace lawn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Decision initial_decision(const Problem& prob, Positions q) {
    const int M = prob.n_uav();
    Decision dec;
    dec.theta = nearest_association(q, prob.geometry().robots);
    dec.p = VectorXd::Constant(M, prob.p_max() / M);
    dec.q = std::move(q);
    return dec;
}

Decision initial_decision(const Problem& prob, std::uint64_t seed) {
    return initial_decision(prob, random_positions(prob.geometry(), seed));
}

namespace {

IterationRecord record(const Decision& dec, const Problem& prob) {
    const auto b = evaluate(dec, prob.with_stability(false));
    return {objective_value(dec, prob), b.lqr_sum, b.det_fim, b.crb_sum};
}

}  // namespace

SolveReport solve(const Problem& prob, const Decision& init, const BlockRules& rules) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& opts = prob.scenario().solver;
    if (const auto why = constraint_violation(init, prob); !why.empty())
        throw ValidationError("initial decision infeasible: " + why);

    SolveReport rep;
    rep.seed = prob.scenario().seed;
    rep.eta = prob.eta();
    rep.p_max = prob.p_max();
    rep.stability_enforced = prob.enforce_stability();

    Decision cur = init;
    double value = objective_value(cur, prob);
    rep.iterations.push_back(record(cur, prob));

    // Keep a block's proposal only if it does not raise the objective.
    const auto offer = [&](Decision trial) {
        const double v = objective_value(trial, prob);
        if (v <= value) {
            cur = std::move(trial);
            value = v;
        }
    };

    for (int t = 1; t <= opts.ao.max_iter; ++t) {
        const double prev = value;
        {
            Decision trial = cur;
            trial.theta = rules.association ? rules.association(cur, prob) : solve_association(cur, prob, opts.dc).theta;
            offer(std::move(trial));
        }
        {
            Decision trial = cur;
            trial.p = rules.power ? rules.power(cur, prob) : solve_power(cur, prob, opts.pgd).p;
            offer(std::move(trial));
        }
        {
            Decision trial = cur;
            trial.q = rules.positions ? rules.positions(cur, prob) : solve_positions(cur, prob, opts.sca).q;
            offer(std::move(trial));
        }
        rep.iterations.push_back(record(cur, prob));
        const double denom = std::abs(prev);
        if (std::abs(value - prev) <= opts.ao.tol * (denom > 0.0 ? denom : 1.0)) {
            rep.converged = true;
            break;
        }
    }

    rep.final = cur;
    const auto b = evaluate(cur, prob.with_stability(false));
    rep.per_robot_cost = b.per_robot_cost;
    rep.stable = b.stable;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SolveReport solve(const Problem& prob) { return solve(prob, initial_decision(prob, prob.scenario().seed)); }

VectorXd recover_lqr_costs(const Decision& dec, const Problem& prob) {
    return evaluate(dec, prob.with_stability(true)).per_robot_cost;
}

void require_stable(const SolveReport& report, const Problem& prob) {
    (void)recover_lqr_costs(report.final, prob);
}

}  // namespace lawn
