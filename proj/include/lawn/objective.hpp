#pragma once

#include "lawn/channel.hpp"
#include "lawn/common.hpp"
#include "lawn/control.hpp"
#include "lawn/scenario.hpp"
#include "lawn/sensing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lawn {

// One candidate solution.
struct Decision {
    Eigen::MatrixXd theta;  // M x K association (relaxed or binary)
    Eigen::VectorXd p;      // M powers, watts
    Positions q;            // M UAV positions
};

// Scenario plus the per-robot plant quantities and resolved weights.
class Problem {
public:
    explicit Problem(Scenario scen);

    [[nodiscard]] const Scenario& scenario() const { return scen_; }
    [[nodiscard]] const RfParams& rf() const { return scen_.rf; }
    [[nodiscard]] const Geometry& geometry() const { return scen_.geometry; }
    [[nodiscard]] int n_uav() const { return scen_.n_uav(); }
    [[nodiscard]] int n_robot() const { return scen_.n_robot(); }

    [[nodiscard]] const PlantDerived& plant(int k) const { return plants_[k]; }
    [[nodiscard]] const std::vector<PlantDerived>& plants() const { return plants_; }
    [[nodiscard]] double floor_cost() const;  // sum_k b_min,k

    [[nodiscard]] double eta() const { return eta_; }
    [[nodiscard]] double psi_c() const { return psi_c_; }
    [[nodiscard]] double psi_s() const { return psi_s_; }
    [[nodiscard]] double p_max() const { return scen_.rf.p_max; }

    // When false, unstable robots contribute +inf cost instead of raising.
    [[nodiscard]] bool enforce_stability() const { return enforce_stability_; }

    // Derived variants sharing the plant solves.
    [[nodiscard]] Problem with_eta(double eta) const;
    [[nodiscard]] Problem with_stability(bool enforce) const;

    // b_k(X) and db_k/dX; +inf and 0 outside the assuredly-stable region.
    [[nodiscard]] double robot_cost(int k, double bits) const;
    [[nodiscard]] double robot_cost_slope(int k, double bits) const;

    // Convex, finite continuation of b_k: below the margin f = kExtensionMargin
    // the cost follows its tangent line. Used where a finite surrogate is needed.
    static constexpr double kExtensionMargin = 1e-3;
    [[nodiscard]] double robot_cost_extended(int k, double bits) const;
    [[nodiscard]] double robot_cost_extended_slope(int k, double bits) const;

private:
    Scenario scen_;
    std::vector<PlantDerived> plants_;
    double eta_ = 0.5;
    double psi_c_ = 1.0;
    double psi_s_ = 1.0;
    bool enforce_stability_ = true;
};

// Automatic normalizers: control cost at f = 1 summed over robots, and the
// AM-GM bound (tr_max / 3)^3 on det(phi_s) over the flight box.
[[nodiscard]] double auto_psi_c(const std::vector<PlantDerived>& plants);
[[nodiscard]] double auto_psi_s(const Scenario& scen);

struct ObjectiveBreakdown {
    double value = 0.0;
    double lqr_sum = 0.0;
    double det_fim = 0.0;
    double crb_sum = 0.0;
    Eigen::VectorXd per_robot_cost;
    Eigen::VectorXd per_robot_throughput;
    Eigen::VectorXd per_robot_margin;  // f_k
    bool stable = true;
};

// Throws StabilityError for the first robot with f_k <= 0 when the problem
// enforces stability; otherwise that robot's cost is +inf.
[[nodiscard]] ObjectiveBreakdown evaluate(const Decision& dec, const Problem& prob);

// The objective the optimizers descend: equal to evaluate(...).value on the
// stable region, finite outside it through robot_cost_extended. Never throws
// StabilityError.
[[nodiscard]] double objective_value(const Decision& dec, const Problem& prob);

// Gradients of objective_value.

[[nodiscard]] Eigen::VectorXd grad_power(const Decision& dec, const Problem& prob);
[[nodiscard]] Positions grad_positions(const Decision& dec, const Problem& prob);

// Empty when the decision satisfies every constraint, otherwise a description of the first violation.
[[nodiscard]] std::string constraint_violation(const Decision& dec, const Problem& prob, bool binary = true);

}  // namespace lawn
