#pragma once

#include "lawn/objective.hpp"
#include "lawn/options.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lawn {

struct IterationRecord {
    double objective = 0.0;  // objective_value, the quantity the driver keeps nonincreasing
    double lqr_sum = 0.0;    // +inf while some robot is unstable
    double det_fim = 0.0;
    double crb_sum = 0.0;
};

struct SolveReport {
    std::vector<IterationRecord> iterations;  // entry 0 is the initial decision
    Decision final;
    Eigen::VectorXd per_robot_cost;
    bool converged = false;
    bool stable = true;
    double wall_time = 0.0;
    std::uint64_t seed = 0;
    std::string scheme = "proposed";
    double eta = 0.0;
    double p_max = 0.0;
    bool stability_enforced = true;

    [[nodiscard]] int outer_iterations() const { return static_cast<int>(iterations.size()) - 1; }
    [[nodiscard]] const IterationRecord& last() const { return iterations.back(); }
};

// Replacement rules for a block. An unset rule means "optimize with the
// default subsolver"; a rule returning the incoming value freezes the block.
struct BlockRules {
    std::function<Eigen::MatrixXd(const Decision&, const Problem&)> association;
    std::function<Eigen::VectorXd(const Decision&, const Problem&)> power;
    std::function<Positions(const Decision&, const Problem&)> positions;
};

// Random collision-free positions, equal power split, nearest association.
[[nodiscard]] Decision initial_decision(const Problem& prob, std::uint64_t seed);
[[nodiscard]] Decision initial_decision(const Problem& prob, Positions q);

// Alternating optimization: association, power, positions, in that order. A
// block update that raises the objective is discarded. Stops when the relative
// objective change drops below ao.tol or after ao.max_iter passes.
[[nodiscard]] SolveReport solve(const Problem& prob, const Decision& init, const BlockRules& rules = {});
[[nodiscard]] SolveReport solve(const Problem& prob);

// Per-robot LQR cost of a decision. Throws StabilityError for an unstable robot.
[[nodiscard]] Eigen::VectorXd recover_lqr_costs(const Decision& dec, const Problem& prob);

// Throws StabilityError naming the first unstable robot of the report's final decision.
void require_stable(const SolveReport& report, const Problem& prob);

}  // namespace lawn
