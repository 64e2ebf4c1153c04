#pragma once

#include "lawn/report_io.hpp"
#include "lawn/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lawn {

// Parameters a sweep may vary.
[[nodiscard]] const std::vector<std::string>& sweep_parameters();

// Sets one sweep parameter: pmax_dbw, sigma_w, blocklength, eta.
void apply_parameter(Scenario& scen, const std::string& param, double value);

// `steps` evenly spaced values from `from` to `to` inclusive.
[[nodiscard]] std::vector<double> linspace(double from, double to, int steps);

struct RunGrid {
    std::vector<double> values;
    int seeds = 1;
    std::uint64_t first_seed = 1;  // runs use first_seed, first_seed + 1, ...
    unsigned workers = 0;          // 0 = hardware concurrency
    bool record_time = false;
    // Optional second axis; the grid is values x values2 x seeds.
    std::string param2;
    std::vector<double> values2;
};

// One proposed-scheme solve per (value[, value2], seed), rows ordered value-major.
[[nodiscard]] std::vector<RunRow> run_sweep(const Scenario& base, const std::string& param, const RunGrid& grid);

// One solve per (scheme, P_max in dBW, seed), rows ordered scheme, value, seed.
[[nodiscard]] std::vector<RunRow> run_benchmark(const Scenario& base, const std::vector<std::string>& schemes,
                                                const RunGrid& grid);

// Per (P_max in dBW, seed): proposed solve, Monte Carlo RMSE, and the CRB of
// the sensing-only scheme at half the budget.
[[nodiscard]] std::vector<RmseRow> run_rmse(const Scenario& base, const RunGrid& grid, int trials);

}  // namespace lawn
