#include "lawn/sensing.hpp"

#include <cmath>
#include <limits>

namespace lawn {

using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double sensing_gain(const RfParams& rf) { return rf.gp() * rf.beta0 / (rf.rho * rf.noise_sense); }

double range_noise_variance(double p, double d, const RfParams& rf) {
    if (!(d > 0.0)) throw ValidationError("range_noise_variance: distance must be positive");
    if (!(p > 0.0)) throw ValidationError("range_noise_variance: unilluminated target (p = 0)");
    const double d2 = d * d;
    return d2 * d2 / (sensing_gain(rf) * p);
}

MatrixXd fim_distances(const VectorXd& p, const VectorXd& d, const RfParams& rf) {
    if (p.size() != d.size()) throw ValidationError("fim_distances: size mismatch");
    MatrixXd phi = MatrixXd::Zero(d.size(), d.size());
    for (int m = 0; m < d.size(); ++m) phi(m, m) = 1.0 / range_noise_variance(p(m), d(m), rf) + 8.0 / (d(m) * d(m));
    return phi;
}

Eigen::Matrix3Xd range_jacobian(const Positions& uavs, const Vec3& s) {
    Eigen::Matrix3Xd J(3, static_cast<Eigen::Index>(uavs.size()));
    for (std::size_t m = 0; m < uavs.size(); ++m) {
        const Vec3 delta = uavs[m] - s;
        const double d = delta.norm();
        if (d == 0.0) throw ValidationError("range_jacobian: UAV coincides with the target");
        J.col(static_cast<Eigen::Index>(m)) = delta / d;
    }
    return J;
}

double det3(const Matrix3d& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Matrix3d adjugate3(const Matrix3d& a) {
    Matrix3d adj;
    adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return adj;
}

void summarize_fim(FimSummary& fim) {
    fim.phi_s = 0.5 * (fim.phi_s + fim.phi_s.transpose());
    const double trace = fim.phi_s.trace();
    Eigen::SelfAdjointEigenSolver<Matrix3d> es(fim.phi_s, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d ev = es.eigenvalues();
    const double cut = 1e-12 * trace;
    fim.rank = 0;
    for (int i = 0; i < 3; ++i)
        if (ev(i) >= cut && ev(i) > 0.0) ++fim.rank;
    fim.det = std::max(0.0, det3(fim.phi_s));
    if (fim.rank < 3) {
        fim.crb_sum = std::numeric_limits<double>::infinity();
    } else {
        fim.crb_sum = (1.0 / ev.array()).sum();
    }
}

FimSummary fim_position(const VectorXd& p, const Positions& uavs, const Vec3& s, const RfParams& rf) {
    if (p.size() != static_cast<Eigen::Index>(uavs.size())) throw ValidationError("fim_position: size mismatch");
    const double kappa = sensing_gain(rf);
    FimSummary fim;
    fim.per_uav_sigma2.resize(p.size());
    for (int m = 0; m < p.size(); ++m) {
        if (p(m) < 0.0) throw ValidationError("fim_position: negative power");
        const Vec3 delta = uavs[m] - s;
        const double d2 = delta.squaredNorm();
        if (d2 == 0.0) throw ValidationError("fim_position: UAV coincides with the target");
        const double d4 = d2 * d2;
        const double weight = kappa * p(m) / (d4 * d2) + 8.0 / d4;
        fim.phi_s += weight * delta * delta.transpose();
        fim.per_uav_sigma2(m) = p(m) > 0.0 ? d4 / (kappa * p(m)) : std::numeric_limits<double>::infinity();
    }
    summarize_fim(fim);
    return fim;
}

Matrix3d fim_position_chain_rule(const VectorXd& p, const Positions& uavs, const Vec3& s, const RfParams& rf) {
    const Eigen::Matrix3Xd J = range_jacobian(uavs, s);
    VectorXd d(p.size());
    for (int m = 0; m < p.size(); ++m) d(m) = (uavs[m] - s).norm();
    return J * fim_distances(p, d, rf) * J.transpose();
}

}  // namespace lawn
