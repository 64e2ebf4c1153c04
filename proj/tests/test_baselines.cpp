#include "helpers.hpp"

#include "lawn/baselines.hpp"

#include <doctest.h>

using namespace lawn;

namespace {

// Water level by bisection on sum max(L - n/h, 0) = P.
Eigen::VectorXd water_oracle(const Eigen::VectorXd& h, double n, double P) {
    double lo = 0.0, hi = 1.0;
    const auto total = [&](double L) { return (L - n / h.array()).cwiseMax(0.0).sum(); };
    while (total(hi) < P) hi *= 2;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (total(mid) > P ? hi : lo) = mid;
    }
    return (0.5 * (lo + hi) - n / h.array()).cwiseMax(0.0).matrix();
}

}  // namespace

TEST_CASE("water-filling levels") {
    SUBCASE("identical gains split evenly") {
        const auto p = water_filling_powers(Eigen::Vector3d::Constant(1e-9), 1e-14, 0.6);
        CHECK((p - Eigen::Vector3d::Constant(0.2)).norm() < 1e-12);
    }
    SUBCASE("two links") {
        const Eigen::Vector2d h(1e-9, 1e-10);
        const auto p = water_filling_powers(h, 1e-14, 0.5);
        const auto o = water_oracle(h, 1e-14, 0.5);
        CHECK(p(0) == doctest::Approx(o(0)).epsilon(1e-10));
        CHECK(p(1) == doctest::Approx(o(1)).epsilon(1e-10));
        CHECK(p(0) == doctest::Approx(0.250045).epsilon(1e-6));
        CHECK(p(1) == doctest::Approx(0.249955).epsilon(1e-6));
    }
    SUBCASE("weak link gets nothing") {
        const auto p = water_filling_powers(Eigen::Vector2d(1e-9, 1e-16), 1e-14, 0.5);
        CHECK(p(0) == doctest::Approx(0.5));
        CHECK(p(1) == 0.0);
    }
}

TEST_CASE("equal power baseline") {
    double full_mean = 0.0, base_mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Scenario s;
        s.seed = seed;
        const Problem prob(s);
        const auto rep = equal_power(prob, seed);
        CHECK((rep.final.p - Eigen::VectorXd::Constant(4, prob.p_max() / 4)).norm() < 1e-15);
        CHECK(constraint_violation(rep.final, prob).empty());
        full_mean += run_scheme("proposed", prob, seed).last().objective;
        base_mean += rep.last().objective;
    }
    CHECK(base_mean >= full_mean - 1e-12);
}

TEST_CASE("single UAV: equal power is the full solve") {
    Scenario s = lawn::testing::fixed_plant_scenario({10.0});
    s.geometry.n_uav = 1;
    s.geometry.robots = {Vec3(30, 30, 0)};
    const Problem prob(s);
    const auto a = equal_power(prob, 1);
    const auto b = run_scheme("proposed", prob, 1);
    CHECK(a.last().objective == doctest::Approx(b.last().objective).epsilon(1e-9));
}

TEST_CASE("random positioning baseline") {
    Scenario s;
    s.seed = 5;
    const Problem prob(s);
    const auto a = random_positioning(prob, 5);
    const auto b = random_positioning(prob, 5);
    CHECK(a.final.q == b.final.q);
    CHECK(a.final.q == initial_decision(prob, 5).q);
    CHECK(constraint_violation(a.final, prob).empty());
}

TEST_CASE("water-filling baseline is feasible") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Scenario s;
        s.seed = seed;
        const Problem prob(s);
        const auto rep = water_filling(prob, seed);
        CHECK(rep.scheme == "water_filling");
        CHECK(constraint_violation(rep.final, prob).empty());
    }
}

TEST_CASE("sensing-only baseline") {
    Scenario s;
    s.seed = 3;
    const Problem prob(s);
    const auto rep = sensing_only(prob, 3);
    CHECK(rep.eta == 0.0);
    CHECK_FALSE(rep.stability_enforced);
    CHECK(rep.final.p.sum() == doctest::Approx(prob.p_max() / 2).epsilon(1e-9));
}

TEST_CASE("scheme dispatch") {
    const Problem prob{Scenario{}};
    for (const auto& name : scheme_names()) CHECK(run_scheme(name, prob, 1).scheme == name);
    CHECK_THROWS_AS(run_scheme("nope", prob, 1), ValidationError);
}
