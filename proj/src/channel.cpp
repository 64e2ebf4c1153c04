#include "lawn/channel.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>

namespace lawn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double channel_gain(const Vec3& q, const Vec3& u, double alpha0) {
    const double d2 = (q - u).squaredNorm();
    if (d2 == 0.0) throw ValidationError("channel_gain: coincident transmitter and receiver");
    return alpha0 / d2;
}

double sinr(int m, int k, const VectorXd& p, const Positions& uavs, const Positions& robots,
            double alpha0, double noise) {
    double interference = noise;
    for (int i = 0; i < static_cast<int>(uavs.size()); ++i) {
        if (i != m) interference += p(i) * channel_gain(uavs[i], robots[k], alpha0);
    }
    return p(m) * channel_gain(uavs[m], robots[k], alpha0) / interference;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double inverse_gaussian_q(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("inverse_gaussian_q: eps must lie in (0, 1)");
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * eps);
}

namespace {

double penalty_scale(double blocklength, double eps, RateConvention convention) {
    const double s = inverse_gaussian_q(eps) / std::sqrt(blocklength);
    return convention == RateConvention::bits ? s * std::numbers::log2e : s;
}

}  // namespace

double fbl_rate(double gamma, double blocklength, double eps, RateConvention convention) {
    const double one_plus = 1.0 + gamma;
    const double dispersion = 1.0 - 1.0 / (one_plus * one_plus);
    const double r = std::log2(one_plus) - std::sqrt(dispersion) * penalty_scale(blocklength, eps, convention);
    return r > 0.0 ? r : 0.0;
}

double fbl_rate_slope(double gamma, double blocklength, double eps, RateConvention convention) {
    if (fbl_rate(gamma, blocklength, eps, convention) <= 0.0) return 0.0;
    const double one_plus = 1.0 + gamma;
    const double dispersion = 1.0 - 1.0 / (one_plus * one_plus);
    // dV/dgamma = 2 (1 + gamma)^-3; d sqrt(V) = dV / (2 sqrt V)
    const double dsqrt_v = 1.0 / (one_plus * one_plus * one_plus * std::sqrt(dispersion));
    return 1.0 / (one_plus * std::numbers::ln2) - dsqrt_v * penalty_scale(blocklength, eps, convention);
}

LinkState link_state(const VectorXd& p, const Positions& uavs, const Positions& robots, const RfParams& rf) {
    const int M = static_cast<int>(uavs.size());
    const int K = static_cast<int>(robots.size());
    LinkState s;
    s.gains.resize(M, K);
    s.sinr.resize(M, K);
    s.rate.resize(M, K);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) s.gains(m, k) = channel_gain(uavs[m], robots[k], rf.alpha0);
    for (int k = 0; k < K; ++k) {
        for (int m = 0; m < M; ++m) {
            const double own = p(m) * s.gains(m, k);
            // Summed directly rather than total-minus-own to avoid cancellation.
            double interference = rf.noise_comm;
            for (int i = 0; i < M; ++i)
                if (i != m) interference += p(i) * s.gains(i, k);
            s.sinr(m, k) = own / interference;
            s.rate(m, k) = fbl_rate(s.sinr(m, k), rf.blocklength, rf.bler, rf.convention);
        }
    }
    return s;
}

bool association_feasible(const MatrixXd& theta, double tol) {
    if ((theta.array() < -tol).any() || (theta.array() > 1.0 + tol).any()) return false;
    for (int m = 0; m < theta.rows(); ++m)
        if (theta.row(m).sum() > 1.0 + tol) return false;
    for (int k = 0; k < theta.cols(); ++k)
        if (std::abs(theta.col(k).sum() - 1.0) > tol) return false;
    return true;
}

VectorXd throughput_per_robot(const MatrixXd& theta, const MatrixXd& rates, double uses_per_step) {
    if (theta.rows() != rates.rows() || theta.cols() != rates.cols())
        throw ValidationError("throughput_per_robot: theta and rate shapes differ");
    // An all-zero column (unserved robot) is allowed here; evaluate() enforces full coverage.
    const double tol = 1e-9;
    if ((theta.array() < -tol).any() || (theta.array() > 1.0 + tol).any() ||
        (theta.rowwise().sum().array() > 1.0 + tol).any() || (theta.colwise().sum().array() > 1.0 + tol).any())
        throw ValidationError("throughput_per_robot: infeasible association");
    return uses_per_step * (theta.array() * rates.array()).colwise().sum().transpose();
}

}  // namespace lawn
