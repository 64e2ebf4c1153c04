#include "lawn/experiments.hpp"

#include "lawn/baselines.hpp"
#include "lawn/montecarlo.hpp"
#include "lawn/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace lawn {

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names{"pmax_dbw", "sigma_w", "blocklength", "eta"};
    return names;
}

void apply_parameter(Scenario& scen, const std::string& param, double value) {
    if (param == "pmax_dbw") {
        scen.rf.p_max = dbw_to_watts(value);
    } else if (param == "sigma_w") {
        scen.control.sigma_w = value;
    } else if (param == "blocklength") {
        scen.rf.blocklength = value;
    } else if (param == "eta") {
        scen.weights.eta = value;
    } else {
        throw ValidationError("unknown sweep parameter '" + param + "'");
    }
}

std::vector<double> linspace(double from, double to, int steps) {
    if (steps < 1) throw ValidationError("steps must be at least 1");
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        v[i] = steps == 1 ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
    if (steps > 1) v.back() = to;
    return v;
}

namespace {

Scenario point_scenario(const Scenario& base, const std::string& param, double value, std::uint64_t seed) {
    Scenario s = base;
    apply_parameter(s, param, value);
    s.seed = seed;
    validate(s);
    return s;
}

}  // namespace

std::vector<RunRow> run_sweep(const Scenario& base, const std::string& param, const RunGrid& grid) {
    const bool two_axis = !grid.param2.empty();
    if (two_axis && (grid.values2.empty() || grid.param2 == param))
        throw ValidationError("second sweep axis needs values and a parameter different from the first");
    const std::size_t S = static_cast<std::size_t>(grid.seeds);
    const std::size_t V2 = two_axis ? grid.values2.size() : 1;
    std::vector<RunRow> rows(grid.values.size() * V2 * S);
    parallel_for(rows.size(), [&](std::size_t i) {
        const double value = grid.values[i / (V2 * S)];
        const std::uint64_t seed = grid.first_seed + i % S;
        Scenario scen = base;
        if (two_axis) apply_parameter(scen, grid.param2, grid.values2[(i / S) % V2]);
        const Problem prob(point_scenario(scen, param, value, seed));
        rows[i] = make_row(run_scheme("proposed", prob, seed), value, grid.record_time);
        if (two_axis) rows[i].value2 = grid.values2[(i / S) % V2];
    }, grid.workers);
    return rows;
}

std::vector<RunRow> run_benchmark(const Scenario& base, const std::vector<std::string>& schemes,
                                  const RunGrid& grid) {
    const std::size_t S = static_cast<std::size_t>(grid.seeds);
    const std::size_t V = grid.values.size();
    std::vector<RunRow> rows(schemes.size() * V * S);
    parallel_for(rows.size(), [&](std::size_t i) {
        const std::string& scheme = schemes[i / (V * S)];
        const double value = grid.values[(i / S) % V];
        const std::uint64_t seed = grid.first_seed + i % S;
        const Problem prob(point_scenario(base, "pmax_dbw", value, seed));
        rows[i] = make_row(run_scheme(scheme, prob, seed), value, grid.record_time);
    }, grid.workers);
    return rows;
}

std::vector<RmseRow> run_rmse(const Scenario& base, const RunGrid& grid, int trials) {
    const std::size_t S = static_cast<std::size_t>(grid.seeds);
    std::vector<RmseRow> rows(grid.values.size() * S);
    parallel_for(rows.size(), [&](std::size_t i) {
        const double value = grid.values[i / S];
        const std::uint64_t seed = grid.first_seed + i % S;
        const Problem prob(point_scenario(base, "pmax_dbw", value, seed));
        const auto rep = run_scheme("proposed", prob, seed);
        // Same noise streams at every budget (common random numbers).
        const auto mc = rmse_experiment(rep.final, prob, trials, mix_seed(seed, 0), 1);
        const auto so = run_scheme("sensing_only", prob, seed);
        RmseRow r;
        r.pmax_dbw = value;
        r.seed = seed;
        r.crb_sum = rep.last().crb_sum;
        r.rmse = mc.rmse;
        r.failures = mc.failures;
        r.trials = mc.trials;
        r.sensing_only_crb_sum = so.last().crb_sum;
        rows[i] = r;
    }, grid.workers);
    return rows;
}

}  // namespace lawn
