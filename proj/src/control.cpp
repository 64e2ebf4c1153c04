#include "lawn/control.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace lawn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

PlantSpec scaled_identity_plant(int iota, double entropy_bits, double sigma_v, double sigma_w,
                                double q_weight, double r_weight) {
    const MatrixXd I = MatrixXd::Identity(iota, iota);
    PlantSpec p;
    p.A = std::exp2(entropy_bits / iota) * I;
    p.B = I;
    p.C = I;
    p.Q = q_weight * I;
    p.R = r_weight * I;
    p.Sigma_v = sigma_v * I;
    p.Sigma_w = sigma_w * I;
    return p;
}

namespace {

bool symmetric_psd(const MatrixXd& X) {
    if (X.rows() != X.cols()) return false;
    const double scale = 1.0 + X.norm();
    if ((X - X.transpose()).norm() > 1e-12 * scale) return false;
    if (X.size() == 0) return true;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(X, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-12 * scale;
}

MatrixXd sym(const MatrixXd& X) { return 0.5 * (X + X.transpose()); }

MatrixXd psd_sqrt(const MatrixXd& X) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(X);
    const VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

// M = S B (R + B^T S B)^-1 B^T S
MatrixXd riccati_m(const PlantSpec& spec, const MatrixXd& S) {
    const MatrixXd G = spec.R + spec.B.transpose() * S * spec.B;
    Eigen::LLT<MatrixXd> llt(sym(G));
    if (llt.info() != Eigen::Success) {
        throw SolverError("cost Riccati: R + B^T S B is singular");
    }
    const MatrixXd SB = S * spec.B;
    return sym(SB * llt.solve(SB.transpose()));
}

// Kalman gain for prediction covariance P. W = C P C^T + Sigma_w.
MatrixXd kalman_gain(const PlantSpec& spec, const MatrixXd& P, MatrixXd& W) {
    W = sym(spec.C * P * spec.C.transpose() + spec.Sigma_w);
    const MatrixXd PCt = P * spec.C.transpose();
    Eigen::LLT<MatrixXd> llt(W);
    if (llt.info() == Eigen::Success) return llt.solve(PCt.transpose()).transpose();
    // Noiseless limit: a zero innovation covariance is consistent only with P C^T = 0.
    if (PCt.norm() <= 1e-300) return MatrixXd::Zero(P.rows(), W.rows());
    throw SolverError("Kalman filter: singular innovation covariance");
}

double log_det_psd(const MatrixXd& X, bool& positive) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(X), Eigen::EigenvaluesOnly);
    const VectorXd ev = es.eigenvalues();
    positive = ev.minCoeff() > 0.0;
    return positive ? ev.array().log().sum() : -std::numeric_limits<double>::infinity();
}

}  // namespace

void validate(const PlantSpec& s) {
    const int n = s.state_dim();
    const auto fail = [](const char* what) { throw ValidationError(std::string("plant: ") + what); };
    if (n < 1 || s.A.cols() != n) fail("A must be square and non-empty");
    if (s.B.rows() != n || s.B.cols() < 1) fail("B must have iota rows");
    if (s.C.cols() != n || s.C.rows() < 1) fail("C must have iota columns");
    if (s.Q.rows() != n || !symmetric_psd(s.Q)) fail("Q must be iota x iota symmetric PSD");
    if (s.R.rows() != s.input_dim() || !symmetric_psd(s.R)) fail("R must be kappa x kappa symmetric PSD");
    if (s.Sigma_v.rows() != n || !symmetric_psd(s.Sigma_v)) fail("Sigma_v must be iota x iota symmetric PSD");
    if (s.Sigma_w.rows() != s.output_dim() || !symmetric_psd(s.Sigma_w))
        fail("Sigma_w must be zeta x zeta symmetric PSD");
}

CostRiccati solve_cost_riccati(const PlantSpec& spec, const RiccatiOptions& opts) {
    validate(spec);
    MatrixXd S = spec.Q;
    for (int it = 0; it < opts.max_iter; ++it) {
        const MatrixXd M = riccati_m(spec, S);
        MatrixXd next = sym(spec.Q + spec.A.transpose() * (S - M) * spec.A);
        const double change = (next - S).norm();
        S = std::move(next);
        if (!S.allFinite()) break;
        if (change <= opts.tol * (1.0 + S.norm())) return {S, riccati_m(spec, S)};
    }
    throw SolverError("cost Riccati iteration did not converge in " + std::to_string(opts.max_iter) +
                      " iterations");
}

KalmanSteadyState solve_kalman_steady(const PlantSpec& spec, const RiccatiOptions& opts) {
    validate(spec);
    MatrixXd P = spec.Sigma_v;
    MatrixXd W;
    for (int it = 0; it < opts.max_iter; ++it) {
        const MatrixXd K = kalman_gain(spec, P, W);
        const MatrixXd AK = spec.A * K;
        MatrixXd next = sym(spec.A * P * spec.A.transpose() - AK * W * AK.transpose() + spec.Sigma_v);
        const double change = (next - P).norm();
        P = std::move(next);
        if (!P.allFinite()) break;
        if (change <= opts.tol * (1.0 + P.norm())) {
            KalmanSteadyState out;
            out.P = P;
            out.K = kalman_gain(spec, P, W);
            out.Sigma = sym(P - out.K * W * out.K.transpose());
            out.N = sym(spec.A * out.Sigma * spec.A.transpose() - out.Sigma + spec.Sigma_v);
            return out;
        }
    }
    throw SolverError("Kalman Riccati iteration did not converge in " + std::to_string(opts.max_iter) +
                      " iterations");
}

RiccatiResiduals riccati_residuals(const PlantSpec& spec, const PlantDerived& d) {
    RiccatiResiduals r;
    r.cost_s = (d.S - spec.Q - spec.A.transpose() * (d.S - d.M) * spec.A).norm();
    const MatrixXd G = spec.R + spec.B.transpose() * d.S * spec.B;
    r.cost_m = (d.M - d.S * spec.B * G.inverse() * spec.B.transpose() * d.S).norm();
    const MatrixXd W = spec.C * d.P * spec.C.transpose() + spec.Sigma_w;
    r.kalman_p = (d.P - (spec.A * d.P * spec.A.transpose() -
                         spec.A * d.K * W * d.K.transpose() * spec.A.transpose() + spec.Sigma_v))
                     .norm();
    r.kalman_k = (d.K * W - d.P * spec.C.transpose()).norm();
    return r;
}

PlantDerived derive_plant(const PlantSpec& spec, const RiccatiOptions& opts) {
    const auto cost = solve_cost_riccati(spec, opts);
    const auto kf = solve_kalman_steady(spec, opts);

    PlantDerived d;
    d.iota = spec.state_dim();
    d.S = cost.S;
    d.M = cost.M;
    d.P = kf.P;
    d.K = kf.K;
    d.Sigma = kf.Sigma;
    d.N = kf.N;

    Eigen::PartialPivLU<MatrixXd> lu(spec.A);
    double log2det = 0.0;
    for (int i = 0; i < d.iota; ++i) {
        const double u = std::abs(lu.matrixLU()(i, i));
        if (u == 0.0) throw ValidationError("entropy rate undefined: det A = 0");
        log2det += std::log2(u);
    }
    d.g = log2det;

    bool n_pos = false;
    bool m_pos = false;
    const double logdet = log_det_psd(d.N, n_pos) + log_det_psd(d.M, m_pos);
    d.omega = (n_pos && m_pos) ? d.iota * std::exp(logdet / d.iota) : 0.0;

    d.b_min = (spec.Sigma_v * d.S).trace() + (d.Sigma * d.S * spec.A.transpose() * d.M * spec.A).trace();
    return d;
}

double stability_margin(const PlantDerived& d, double bits) { return 2.0 / d.iota * (bits - d.g); }

double lqr_cost_from_throughput(const PlantDerived& d, double bits) {
    const double f = stability_margin(d, bits);
    if (!(f > 0.0)) throw StabilityError(-1, f);
    // expm1 keeps precision for small f and saturates to +inf for huge f.
    return d.omega / std::expm1(f * std::numbers::ln2) + d.b_min;
}

double lqr_cost_slope(const PlantDerived& d, double bits) {
    const double f = stability_margin(d, bits);
    if (!(f > 0.0)) throw StabilityError(-1, f);
    // 2^f / (2^f - 1)^2 written in terms of e = 2^-f
    const double e = std::exp(-f * std::numbers::ln2);
    const double denom = -std::expm1(-f * std::numbers::ln2);
    return -d.omega * std::numbers::ln2 * (2.0 / d.iota) * e / (denom * denom);
}

double required_throughput(const PlantDerived& d, double b_target) {
    if (!(b_target > d.b_min)) throw ValidationError("target cost is below minimum cost floor b_min");
    return d.g + 0.5 * d.iota * std::log1p(d.omega / (b_target - d.b_min)) / std::numbers::ln2;
}

double simulate_lqg(const PlantSpec& spec, std::size_t steps, std::uint64_t seed) {
    const auto cost = solve_cost_riccati(spec);
    const auto kf = solve_kalman_steady(spec);
    const MatrixXd G = spec.R + spec.B.transpose() * cost.S * spec.B;
    const MatrixXd gain = G.llt().solve(spec.B.transpose() * cost.S * spec.A);

    const int n = spec.state_dim();
    const int nz = spec.output_dim();
    const MatrixXd v_root = psd_sqrt(spec.Sigma_v);
    const MatrixXd w_root = psd_sqrt(spec.Sigma_w);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto draw = [&](int dim) {
        VectorXd e(dim);
        for (int i = 0; i < dim; ++i) e(i) = normal(rng);
        return e;
    };

    VectorXd x = VectorXd::Zero(n);
    VectorXd prior = VectorXd::Zero(n);
    double total = 0.0;
    for (std::size_t step = 0; step < steps; ++step) {
        const VectorXd y = spec.C * x + w_root * draw(nz);
        const VectorXd est = prior + kf.K * (y - spec.C * prior);
        const VectorXd z = -gain * est;
        total += x.dot(spec.Q * x) + z.dot(spec.R * z);
        x = spec.A * x + spec.B * z + v_root * draw(n);
        prior = spec.A * est + spec.B * z;
        if (!x.allFinite() || x.norm() > 1e150) throw SolverError("simulate_lqg: unstable closed loop");
    }
    return steps == 0 ? 0.0 : total / static_cast<double>(steps);
}

}  // namespace lawn
