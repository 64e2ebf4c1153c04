#pragma once

#include "lawn/common.hpp"
#include "lawn/options.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lawn {

// ---------------------------------------------------------------------------
// Unit conversions
// ---------------------------------------------------------------------------

[[nodiscard]] double db_to_linear(double db);
[[nodiscard]] double linear_to_db(double ratio);
[[nodiscard]] double dbm_to_watts(double dbm);
[[nodiscard]] double dbw_to_watts(double dbw);
[[nodiscard]] double watts_to_dbw(double watts);

// ---------------------------------------------------------------------------
// Scenario types
// ---------------------------------------------------------------------------

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool contains(double x, double slack = 0.0) const {
        return x >= lo - slack && x <= hi + slack;
    }
    bool operator==(const Interval&) const = default;
};

struct Geometry {
    Interval area_x{0.0, 100.0};
    Interval area_y{0.0, 100.0};
    // A degenerate interval pins every UAV to that height.
    Interval altitude{100.0, 100.0};
    double d_min = 25.0;
    std::vector<Vec3> robots{Vec3(20, 20, 0), Vec3(80, 30, 0), Vec3(50, 80, 0)};
    Vec3 target{70, 70, 0};
    int n_uav = 4;

    [[nodiscard]] bool fixed_altitude() const { return altitude.lo == altitude.hi; }
    [[nodiscard]] int n_robot() const { return static_cast<int>(robots.size()); }
    [[nodiscard]] bool contains(const Vec3& q, double slack = 1e-9) const;
    bool operator==(const Geometry&) const = default;
};

enum class RateConvention {
    bits,  // dispersion penalty converted to bits (multiplied by log2 e)
    nats,  // penalty left as printed in the rate formula
};

struct RfParams {
    double alpha0 = 0.0;       // comm reference gain at 1 m (linear)
    double beta0 = 0.0;        // two-way sensing reference gain at 1 m (linear)
    double noise_comm = 0.0;   // W, per-robot receiver noise
    double noise_sense = 0.0;  // W, UAV echo receiver noise
    double bandwidth = 5e5;    // Hz
    double gp_factor = 0.1;    // processing gain G_p = gp_factor * bandwidth
    double rho = 200.0;
    double bler = 1e-5;
    double blocklength = 1024.0;
    double uses_per_step = 250.0;  // channel uses per control step
    double p_max = 0.0;            // W, network power budget
    RateConvention convention = RateConvention::bits;

    RfParams();
    [[nodiscard]] double gp() const { return gp_factor * bandwidth; }
    bool operator==(const RfParams&) const = default;
};

// Robots follow the scaled-identity plant family A = 2^(g/iota) I, B = C = I.
struct ControlParams {
    int iota = 25;
    int zeta = 25;
    double sigma_v = 1e-3;  // process noise variance per state
    double sigma_w = 1e-3;  // observation noise variance per output
    double q_weight = 1.0;
    double r_weight = 0.0;
    Interval entropy_range{0.0, 50.0};
    // Explicit per-robot entropy rates (bits/step). Drawn from the seed when unset.
    std::optional<std::vector<double>> entropy_rates;

    bool operator==(const ControlParams&) const = default;
};

struct ObjectiveWeights {
    double eta = 0.5;
    // Unset normalizers resolve to scenario-specific upper bounds (see Problem).
    std::optional<double> psi_c;
    std::optional<double> psi_s;

    bool operator==(const ObjectiveWeights&) const = default;
};

struct Scenario {
    Geometry geometry;
    RfParams rf;
    ControlParams control;
    ObjectiveWeights weights;
    SolverOptions solver;
    std::uint64_t seed = 1;

    [[nodiscard]] int n_uav() const { return geometry.n_uav; }
    [[nodiscard]] int n_robot() const { return geometry.n_robot(); }
};

bool operator==(const SolverOptions& a, const SolverOptions& b);
inline bool operator==(const Scenario& a, const Scenario& b) {
    return a.geometry == b.geometry && a.rf == b.rf && a.control == b.control &&
           a.weights == b.weights && a.solver == b.solver && a.seed == b.seed;
}

// Throws ValidationError naming the first violated invariant.
void validate(const Scenario& scen);

// Parses the sectioned key/value format documented in README.md. Values are
// JSON literals; keys missing from the document keep their defaults.
[[nodiscard]] Scenario load_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario_file(const std::string& path);
[[nodiscard]] std::string save_scenario(const Scenario& scen);

// Per-robot entropy rates: the explicit list, or uniform draws from the seed.
[[nodiscard]] std::vector<double> entropy_rates(const Scenario& scen);

// n_uav points uniform over the flight box with pairwise distance >= d_min.
// Deterministic in `seed`; throws SolverError once the attempt budget runs out.
[[nodiscard]] Positions random_positions(const Geometry& geometry, std::uint64_t seed);

// Greedy lattice packing used as a feasibility witness; returns how many
// points at pairwise distance >= d_min it managed to place (capped at n_uav).
[[nodiscard]] int greedy_packing_count(const Geometry& geometry);

}  // namespace lawn
