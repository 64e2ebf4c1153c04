#pragma once

#include "lawn/common.hpp"
#include "lawn/scenario.hpp"

namespace lawn {

struct FimSummary {
    Eigen::Matrix3d phi_s = Eigen::Matrix3d::Zero();
    double det = 0.0;
    double crb_sum = 0.0;  // tr(phi_s^-1), +inf when singular
    Eigen::VectorXd per_uav_sigma2;
    int rank = 0;

    [[nodiscard]] bool singular() const { return rank < 3; }
};

// kappa = G_p beta0 / (rho sigma0^2): range precision per watt at 1 m, so 1/sigma^2 = kappa p / d^4.
[[nodiscard]] double sensing_gain(const RfParams& rf);

// sigma_m^2 = rho sigma0^2 d^4 / (p G_p beta0). p = 0 throws ValidationError ("unilluminated target").
[[nodiscard]] double range_noise_variance(double p, double d, const RfParams& rf);

// Diagonal FIM of the distance vector: 1/sigma_m^2 + 8/d_m^2.
[[nodiscard]] Eigen::MatrixXd fim_distances(const Eigen::VectorXd& p, const Eigen::VectorXd& d,
                                            const RfParams& rf);

// 3 x M, column m = (q_m - s) / d_m.
[[nodiscard]] Eigen::Matrix3Xd range_jacobian(const Positions& uavs, const Vec3& s);

// Position FIM assembled entrywise: sum_m (kappa p_m / d^6 + 8 / d^4) Delta Delta^T.
// UAVs with p_m = 0 contribute only the geometric 8/d^4 term (sigma^2 reported as +inf).
[[nodiscard]] FimSummary fim_position(const Eigen::VectorXd& p, const Positions& uavs, const Vec3& s,
                                      const RfParams& rf);

// Same matrix through J Phi(d) J^T. Requires every p_m > 0.
[[nodiscard]] Eigen::Matrix3d fim_position_chain_rule(const Eigen::VectorXd& p, const Positions& uavs,
                                                      const Vec3& s, const RfParams& rf);

// Cofactor-expansion determinant and adjugate of a 3x3 matrix.
[[nodiscard]] double det3(const Eigen::Matrix3d& a);
[[nodiscard]] Eigen::Matrix3d adjugate3(const Eigen::Matrix3d& a);

// Fills det, crb_sum and rank from phi_s. Singular when lambda_min < 1e-12 * trace.
void summarize_fim(FimSummary& fim);

}  // namespace lawn
