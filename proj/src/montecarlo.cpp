#include "lawn/montecarlo.hpp"

#include "lawn/parallel.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace lawn {

using Eigen::VectorXd;

VectorXd simulate_ranges(const Decision& dec, const Vec3& s, const RfParams& rf, std::uint64_t seed,
                         bool noiseless) {
    const int M = static_cast<int>(dec.q.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    VectorXd d_hat(M);
    for (int m = 0; m < M; ++m) {
        const double d = (dec.q[m] - s).norm();
        d_hat(m) = d;
        if (!noiseless) d_hat(m) += std::sqrt(range_noise_variance(dec.p(m), d, rf)) * normal(rng);
    }
    return d_hat;
}

WlsResult localize_wls(const VectorXd& d_hat, const Positions& uavs, const VectorXd& sigma2, const Vec3& init) {
    const int M = static_cast<int>(uavs.size());
    const VectorXd w = sigma2.cwiseInverse();
    const double tol = 1e-9 * w.sum();

    const auto cost = [&](const Vec3& s) {
        double c = 0.0;
        for (int m = 0; m < M; ++m) {
            const double r = d_hat(m) - (uavs[m] - s).norm();
            c += w(m) * r * r;
        }
        return c;
    };

    WlsResult out;
    Vec3 s = init;
    double c = cost(s);
    for (int it = 0; it < 100; ++it) {
        Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
        Vec3 g = Vec3::Zero();  // J^T W r with dr/ds = (q - s)/|q - s|
        for (int m = 0; m < M; ++m) {
            const Vec3 delta = uavs[m] - s;
            const double d = delta.norm();
            if (d == 0.0) {
                out.estimate = s;
                return out;
            }
            const Vec3 j = delta / d;
            const double r = d_hat(m) - d;
            H += w(m) * j * j.transpose();
            g += w(m) * r * j;
        }
        out.iterations = it;
        if (g.norm() <= tol) {
            out.converged = true;
            break;
        }
        Eigen::LDLT<Eigen::Matrix3d> ldlt(H);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H, Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(0) <= 1e-12 * H.trace()) {  // singular normal equations
            out.estimate = s;
            return out;
        }
        const Vec3 step = -ldlt.solve(g);
        double t = 1.0;
        bool improved = false;
        for (int h = 0; h < 40; ++h, t *= 0.5) {
            const Vec3 cand = s + t * step;
            const double cc = cost(cand);
            if (cc <= c) {
                improved = cc < c || t * step.norm() == 0.0;
                s = cand;
                c = cc;
                break;
            }
        }
        if (!improved) {
            // No representable descent: stationary to working precision.
            out.converged = g.norm() <= 1e3 * tol;
            break;
        }
    }
    out.estimate = s;
    return out;
}

Vec3 wls_init_offset() { return Vec3::Constant(5.0 / std::sqrt(3.0)); }

RmseResult rmse_experiment(const Decision& dec, const Problem& prob, int trials, std::uint64_t seed,
                           unsigned workers) {
    if (trials <= 0) throw ValidationError("rmse_experiment: trials must be positive");
    const Vec3& s = prob.geometry().target;
    const auto fim = fim_position(dec.p, dec.q, s, prob.rf());

    // Only illuminating UAVs carry range information.
    Decision active = dec;
    active.q.clear();
    std::vector<double> var;
    for (int m = 0; m < dec.p.size(); ++m) {
        if (dec.p(m) > 0.0) {
            active.q.push_back(dec.q[m]);
            var.push_back(fim.per_uav_sigma2(m));
        }
    }
    active.p.resize(static_cast<Eigen::Index>(var.size()));
    for (int i = 0, j = 0; i < dec.p.size(); ++i)
        if (dec.p(i) > 0.0) active.p(j++) = dec.p(i);
    const VectorXd sigma2 = Eigen::Map<const VectorXd>(var.data(), static_cast<Eigen::Index>(var.size()));

    std::vector<double> err2(trials, 0.0);
    std::vector<char> ok(trials, 0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        const VectorXd d_hat = simulate_ranges(active, s, prob.rf(), mix_seed(seed, i));
        const auto est = localize_wls(d_hat, active.q, sigma2, s + wls_init_offset());
        ok[i] = est.converged;
        err2[i] = (est.estimate - s).squaredNorm();
    }, workers);

    RmseResult out;
    out.trials = trials;
    out.crb_sqrt = std::sqrt(fim.crb_sum);
    double sum = 0.0;
    int good = 0;
    for (int i = 0; i < trials; ++i) {
        if (!ok[i]) {
            ++out.failures;
            continue;
        }
        sum += err2[i];
        ++good;
    }
    if (good == 0) throw SolverError("rmse_experiment: every localization trial failed");
    out.rmse = std::sqrt(sum / good);
    return out;
}

}  // namespace lawn
