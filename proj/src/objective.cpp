#include "lawn/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lawn {

using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from the target to the closest admissible UAV position.
double closest_approach(const Scenario& scen) {
    const auto& g = scen.geometry;
    const Vec3& s = g.target;
    const Vec3 nearest(std::clamp(s.x(), g.area_x.lo, g.area_x.hi), std::clamp(s.y(), g.area_y.lo, g.area_y.hi),
                       std::clamp(s.z(), g.altitude.lo, g.altitude.hi));
    return (nearest - s).norm();
}

}  // namespace

double auto_psi_c(const std::vector<PlantDerived>& plants) {
    double sum = 0.0;
    for (const auto& d : plants) sum += d.b_min + d.omega;
    return sum > 0.0 ? sum : 1.0;
}

double auto_psi_s(const Scenario& scen) {
    const double d_lo = closest_approach(scen);
    if (!(d_lo > 0.0)) throw ValidationError("auto sensing normalizer: the target lies inside the flight box");
    const double d2 = d_lo * d_lo;
    const double tr_max = sensing_gain(scen.rf) * scen.rf.p_max / (d2 * d2) + 8.0 * scen.n_uav() / d2;
    const double third = tr_max / 3.0;
    return third * third * third;
}

Problem::Problem(Scenario scen) : scen_(std::move(scen)) {
    validate(scen_);
    const auto rates = entropy_rates(scen_);
    // Robots sharing an entropy rate share a plant; solve each distinct one once.
    std::map<double, PlantDerived> cache;
    plants_.reserve(rates.size());
    const auto& c = scen_.control;
    for (double g : rates) {
        auto it = cache.find(g);
        if (it == cache.end()) {
            const auto spec = scaled_identity_plant(c.iota, g, c.sigma_v, c.sigma_w, c.q_weight, c.r_weight);
            it = cache.emplace(g, derive_plant(spec)).first;
        }
        plants_.push_back(it->second);
    }
    eta_ = scen_.weights.eta;
    psi_c_ = scen_.weights.psi_c.value_or(auto_psi_c(plants_));
    psi_s_ = scen_.weights.psi_s.value_or(auto_psi_s(scen_));
}

double Problem::floor_cost() const {
    double sum = 0.0;
    for (const auto& d : plants_) sum += d.b_min;
    return sum;
}

Problem Problem::with_eta(double eta) const {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in [0, 1]");
    Problem out = *this;
    out.eta_ = eta;
    out.scen_.weights.eta = eta;
    return out;
}

Problem Problem::with_stability(bool enforce) const {
    Problem out = *this;
    out.enforce_stability_ = enforce;
    return out;
}

double Problem::robot_cost(int k, double bits) const {
    const auto& d = plants_[k];
    if (!(stability_margin(d, bits) > 0.0)) return kInf;
    return lqr_cost_from_throughput(d, bits);
}

double Problem::robot_cost_slope(int k, double bits) const {
    const auto& d = plants_[k];
    if (!(stability_margin(d, bits) > 0.0)) return 0.0;
    return lqr_cost_slope(d, bits);
}

namespace {

double extension_point(const PlantDerived& d) { return d.g + 0.5 * d.iota * Problem::kExtensionMargin; }

}  // namespace

double Problem::robot_cost_extended(int k, double bits) const {
    const auto& d = plants_[k];
    const double x0 = extension_point(d);
    if (bits >= x0) return lqr_cost_from_throughput(d, bits);
    return lqr_cost_from_throughput(d, x0) + lqr_cost_slope(d, x0) * (bits - x0);
}

double Problem::robot_cost_extended_slope(int k, double bits) const {
    const auto& d = plants_[k];
    return lqr_cost_slope(d, std::max(bits, extension_point(d)));
}

namespace {

struct Pieces {
    LinkState links;
    VectorXd throughput;
    FimSummary fim;
};

Pieces compute_pieces(const Decision& dec, const Problem& prob) {
    const auto& g = prob.geometry();
    if (dec.p.size() != prob.n_uav() || static_cast<int>(dec.q.size()) != prob.n_uav() ||
        dec.theta.rows() != prob.n_uav() || dec.theta.cols() != prob.n_robot())
        throw ValidationError("decision dimensions do not match the scenario");
    Pieces pc;
    pc.links = link_state(dec.p, dec.q, g.robots, prob.rf());
    pc.throughput = throughput_per_robot(dec.theta, pc.links.rate, prob.rf().uses_per_step);
    pc.fim = fim_position(dec.p, dec.q, g.target, prob.rf());
    return pc;
}

}  // namespace

ObjectiveBreakdown evaluate(const Decision& dec, const Problem& prob) {
    const Pieces pc = compute_pieces(dec, prob);
    const int K = prob.n_robot();
    ObjectiveBreakdown out;
    out.per_robot_throughput = pc.throughput;
    out.per_robot_cost.resize(K);
    out.per_robot_margin.resize(K);
    for (int k = 0; k < K; ++k) {
        const double f = stability_margin(prob.plant(k), pc.throughput(k));
        out.per_robot_margin(k) = f;
        if (!(f > 0.0)) {
            if (prob.enforce_stability()) throw StabilityError(k, f);
            out.stable = false;
            out.per_robot_cost(k) = kInf;
        } else {
            out.per_robot_cost(k) = lqr_cost_from_throughput(prob.plant(k), pc.throughput(k));
        }
    }
    out.lqr_sum = out.per_robot_cost.sum();
    out.det_fim = pc.fim.det;
    out.crb_sum = pc.fim.crb_sum;
    const double control = prob.eta() > 0.0 ? prob.eta() / prob.psi_c() * out.lqr_sum : 0.0;
    out.value = control - (1.0 - prob.eta()) / prob.psi_s() * out.det_fim;
    return out;
}

double objective_value(const Decision& dec, const Problem& prob) {
    const Pieces pc = compute_pieces(dec, prob);
    double control = 0.0;
    if (prob.eta() > 0.0) {
        for (int k = 0; k < prob.n_robot(); ++k) control += prob.robot_cost_extended(k, pc.throughput(k));
        control *= prob.eta() / prob.psi_c();
    }
    return control - (1.0 - prob.eta()) / prob.psi_s() * pc.fim.det;
}

VectorXd grad_power(const Decision& dec, const Problem& prob) {
    const Pieces pc = compute_pieces(dec, prob);
    const auto& rf = prob.rf();
    const auto& g = prob.geometry();
    const int M = prob.n_uav();
    const int K = prob.n_robot();
    VectorXd grad = VectorXd::Zero(M);

    if (prob.eta() > 0.0) {
        const double scale = prob.eta() / prob.psi_c() * rf.uses_per_step;
        for (int k = 0; k < K; ++k) {
            const double slope = prob.robot_cost_extended_slope(k, pc.throughput(k));
            if (slope == 0.0) continue;
            for (int m = 0; m < M; ++m) {
                if (dec.theta(m, k) == 0.0) continue;
                const double gamma = pc.links.sinr(m, k);
                const double dr = fbl_rate_slope(gamma, rf.blocklength, rf.bler, rf.convention);
                if (dr == 0.0) continue;
                double interference = rf.noise_comm;
                for (int i = 0; i < M; ++i)
                    if (i != m) interference += dec.p(i) * pc.links.gains(i, k);
                const double w = scale * slope * dec.theta(m, k) * dr;
                for (int j = 0; j < M; ++j) {
                    const double dgamma = j == m ? pc.links.gains(m, k) / interference
                                                 : -gamma * pc.links.gains(j, k) / interference;
                    grad(j) += w * dgamma;
                }
            }
        }
    }

    if (prob.eta() < 1.0) {
        const Matrix3d adj = adjugate3(pc.fim.phi_s);
        const double kappa = sensing_gain(rf);
        const double scale = (1.0 - prob.eta()) / prob.psi_s();
        for (int m = 0; m < M; ++m) {
            const Vec3 delta = dec.q[m] - g.target;
            const double d2 = delta.squaredNorm();
            grad(m) -= scale * kappa * delta.dot(adj * delta) / (d2 * d2 * d2);
        }
    }
    return grad;
}

Positions grad_positions(const Decision& dec, const Problem& prob) {
    const Pieces pc = compute_pieces(dec, prob);
    const auto& rf = prob.rf();
    const auto& g = prob.geometry();
    const int M = prob.n_uav();
    const int K = prob.n_robot();
    Positions grad(M, Vec3::Zero());

    if (prob.eta() > 0.0) {
        const double scale = prob.eta() / prob.psi_c() * rf.uses_per_step;
        for (int k = 0; k < K; ++k) {
            const double slope = prob.robot_cost_extended_slope(k, pc.throughput(k));
            if (slope == 0.0) continue;
            // d h_{j,k} / d q_j = -2 h (q_j - u_k) / |q_j - u_k|^2
            std::vector<Vec3> dh(M);
            for (int j = 0; j < M; ++j) {
                const Vec3 r = dec.q[j] - g.robots[k];
                dh[j] = -2.0 * pc.links.gains(j, k) / r.squaredNorm() * r;
            }
            for (int m = 0; m < M; ++m) {
                if (dec.theta(m, k) == 0.0) continue;
                const double gamma = pc.links.sinr(m, k);
                const double dr = fbl_rate_slope(gamma, rf.blocklength, rf.bler, rf.convention);
                if (dr == 0.0) continue;
                double interference = rf.noise_comm;
                for (int i = 0; i < M; ++i)
                    if (i != m) interference += dec.p(i) * pc.links.gains(i, k);
                const double w = scale * slope * dec.theta(m, k) * dr;
                for (int j = 0; j < M; ++j) {
                    const double c = j == m ? dec.p(m) / interference : -gamma * dec.p(j) / interference;
                    grad[j] += w * c * dh[j];
                }
            }
        }
    }

    if (prob.eta() < 1.0) {
        const Matrix3d adj = adjugate3(pc.fim.phi_s);
        const double kappa = sensing_gain(rf);
        const double scale = (1.0 - prob.eta()) / prob.psi_s();
        for (int m = 0; m < M; ++m) {
            const Vec3 delta = dec.q[m] - g.target;
            const double d = delta.norm();
            const double d2 = d * d;
            const double d4 = d2 * d2;
            const double kp = kappa * dec.p(m);
            const double w = kp / (d4 * d2) + 8.0 / d4;
            const double dw = -6.0 * kp / (d4 * d2 * d) - 32.0 / (d4 * d);
            const Vec3 a_delta = adj * delta;
            const Vec3 ddet = dw / d * delta.dot(a_delta) * delta + 2.0 * w * a_delta;
            grad[m] -= scale * ddet;
        }
    }
    return grad;
}

std::string constraint_violation(const Decision& dec, const Problem& prob, bool binary) {
    const auto& g = prob.geometry();
    const int M = prob.n_uav();
    if (dec.p.size() != M || static_cast<int>(dec.q.size()) != M || dec.theta.rows() != M ||
        dec.theta.cols() != prob.n_robot())
        return "dimension mismatch";
    if (!association_feasible(dec.theta)) return "association outside the feasible polytope";
    if (binary && ((dec.theta.array() != 0.0) && (dec.theta.array() != 1.0)).any()) return "association not binary";
    if ((dec.p.array() < 0.0).any()) return "negative power";
    if (dec.p.sum() > prob.p_max() * (1.0 + 1e-12) + 1e-15) return "power budget exceeded";
    for (int m = 0; m < M; ++m) {
        if (!g.contains(dec.q[m])) return "UAV " + std::to_string(m) + " outside the flight box";
        for (int r = m + 1; r < M; ++r)
            if ((dec.q[m] - dec.q[r]).norm() < g.d_min - 1e-9)
                return "UAVs " + std::to_string(m) + " and " + std::to_string(r) + " closer than d_min";
    }
    return {};
}

}  // namespace lawn
