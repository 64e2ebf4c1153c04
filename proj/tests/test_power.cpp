#include "helpers.hpp"

#include "lawn/power.hpp"

#include <doctest.h>

#include <random>

using namespace lawn;

namespace {

// Nearest point of {x >= 0, sum x <= c} on a grid of spacing h (2D).
Eigen::Vector2d grid_projection(const Eigen::Vector2d& v, double c, double h) {
    Eigen::Vector2d best(0, 0);
    double best_d = (v - best).squaredNorm();
    const int n = static_cast<int>(std::round(c / h));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const Eigen::Vector2d w(i * h, j * h);
            const double d = (v - w).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = w;
            }
        }
    return best;
}

Eigen::VectorXd random_feasible(std::mt19937_64& rng, int n, double c) {
    std::exponential_distribution<double> e(1.0);
    Eigen::VectorXd w(n + 1);
    for (int i = 0; i <= n; ++i) w(i) = e(rng);
    return c * w.head(n) / w.sum();
}

}  // namespace

TEST_CASE("capped simplex projection examples") {
    CHECK((project_capped_simplex(Eigen::Vector2d(0.5, 0.5), 2.0) - Eigen::Vector2d(0.5, 0.5)).norm() < 1e-15);
    CHECK((project_capped_simplex(Eigen::Vector2d(2, 2), 2.0) - Eigen::Vector2d(1, 1)).norm() < 1e-15);
    CHECK((project_capped_simplex(Eigen::Vector2d(3, -1), 2.0) - Eigen::Vector2d(2, 0)).norm() < 1e-15);
    for (const Eigen::Vector2d& v : {Eigen::Vector2d(2, 2), Eigen::Vector2d(3, -1), Eigen::Vector2d(-0.4, 1.7)})
        CHECK((project_capped_simplex(v, 2.0) - grid_projection(v, 2.0, 1e-3)).norm() <= 2e-3);
    CHECK_THROWS_AS(project_capped_simplex(Eigen::Vector2d(1, 1), 0.0), ValidationError);
}

TEST_CASE("capped simplex projection properties") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n(0.0, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 2 + trial % 4;
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = n(rng);
        const double c = 0.5 + trial % 3;
        const auto p = project_capped_simplex(v, c);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(p.sum() <= c + 1e-12);
        CHECK((project_capped_simplex(p, c) - p).norm() < 1e-14);
        const double dp = (v - p).norm();
        for (int k = 0; k < 1000; ++k) CHECK((v - random_feasible(rng, dim, c)).norm() >= dp - 1e-12);
    }
}

TEST_CASE("PGD output is feasible and descends") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Scenario s;
        s.seed = seed;
        const Problem prob(s);
        const Decision d = lawn::testing::random_decision(prob, seed);
        const auto r = solve_power(d, prob, PgdOptions{});
        CHECK(r.p.minCoeff() >= 0.0);
        CHECK(r.p.sum() <= prob.p_max() + 1e-12);
        for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    }
}

TEST_CASE("pure sensing spends the whole budget") {
    Scenario s;
    s.geometry.n_uav = 3;
    s.geometry.robots = {Vec3(20, 20, 0)};
    const Problem prob = Problem(s).with_eta(0.0);
    Decision d;
    d.q = {Vec3(20, 80, 100), Vec3(80, 80, 100), Vec3(60, 20, 100)};
    d.theta = Eigen::Vector3d(1, 0, 0);
    d.p = Eigen::Vector3d(0.05, 0.05, 0.05);
    const auto r = solve_power(d, prob, PgdOptions{});
    CHECK(r.p.sum() == doctest::Approx(prob.p_max()).epsilon(1e-9));
    Decision at = d;
    at.p = r.p;
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        Decision interior = d;
        interior.p = random_feasible(rng, 3, prob.p_max());
        CHECK(objective_value(at, prob) <= objective_value(interior, prob) + 1e-12);
    }
}

TEST_CASE("symmetric scene keeps the equal split") {
    Scenario s = lawn::testing::fixed_plant_scenario({20.0, 20.0});
    s.geometry.n_uav = 2;
    s.geometry.robots = {Vec3(30, 50, 0), Vec3(70, 50, 0)};
    const Problem prob(s);
    Decision d;
    d.q = {Vec3(30, 50, 100), Vec3(70, 50, 100)};
    d.theta = Eigen::Matrix2d::Identity();
    d.p = Eigen::Vector2d::Constant(prob.p_max() / 2);
    const auto r = solve_power(d, prob, PgdOptions{});
    // Mirror-image gradients agree only to roundoff.
    CHECK((r.p - d.p).norm() <= 1e-9 * prob.p_max());
}

TEST_CASE("PGD against a two-UAV grid search") {
    int bracketed = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Scenario s;
        s.seed = seed;
        s.geometry.n_uav = 2;
        s.geometry.robots = {Vec3(20, 20, 0), Vec3(80, 60, 0)};
        const Problem prob(s);
        const Decision d = lawn::testing::random_decision(prob, seed);
        const auto r = solve_power(d, prob, PgdOptions{});
        Decision at = d;
        at.p = r.p;
        const double pgd = objective_value(at, prob);
        double best = std::numeric_limits<double>::infinity();
        const double h = prob.p_max() / 199.0;
        for (int i = 0; i < 200; ++i)
            for (int j = 0; i + j < 200; ++j) {
                Decision g = d;
                g.p = Eigen::Vector2d(i * h, j * h);
                best = std::min(best, objective_value(g, prob));
            }
        if (pgd <= best + 1e-3 * std::abs(best)) ++bracketed;
    }
    CHECK(bracketed == 20);
}
