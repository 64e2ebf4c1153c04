#pragma once

#include "lawn/objective.hpp"
#include "lawn/options.hpp"

#include <vector>

namespace lawn {

// 2 a^T (q_m - q_r) >= |a|^2 + d_min^2 with a = anchor_m - anchor_r, the
// first-order lower bound of |q_m - q_r|^2 >= d_min^2 around the anchor.
struct CollisionCut {
    int m = 0;
    int r = 0;
    Vec3 normal = Vec3::Zero();  // a
    double rhs = 0.0;            // |a|^2 + d_min^2

    [[nodiscard]] double slack(const Vec3& qm, const Vec3& qr) const { return 2.0 * normal.dot(qm - qr) - rhs; }
};

// Throws ValidationError when two anchors coincide or sit closer than d_min.
[[nodiscard]] std::vector<CollisionCut> linearize_collision(const Positions& anchor, double d_min);

struct ScaStep {
    Positions q;
    bool accepted = false;
    double value = 0.0;      // objective at q (anchor value when rejected)
    double predicted = 0.0;  // first-order model decrease, >= 0
};

// One trust-region step: minimize the linearized objective over the cuts, the
// flight box and |q_m - anchor_m|_inf <= trust. Accepted iff the objective does
// not increase (a zero step is accepted).
[[nodiscard]] ScaStep sca_step(const Decision& dec, const Problem& prob, double trust);

struct PositionResult {
    Positions q;
    std::vector<double> trace;  // objective at every accepted iterate, starting point first
    int iterations = 0;
    int accepted = 0;
};

[[nodiscard]] PositionResult solve_positions(const Decision& dec, const Problem& prob, const ScaOptions& opts);

}  // namespace lawn
