#pragma once

#include "lawn/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lawn {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kTraceHeader = "iter,objective,lqr_sum,det_fim,crb_sum";
inline constexpr std::string_view kSweepHeader = "value,seed,lqr_sum,det_fim,crb_sum,objective,iters,wall_time";
// Two-axis sweeps (contour grids) add the second coordinate after `value`.
inline constexpr std::string_view kGridSweepHeader =
    "value,value2,seed,lqr_sum,det_fim,crb_sum,objective,iters,wall_time";
inline constexpr std::string_view kBenchmarkHeader =
    "scheme,pmax_dbw,seed,lqr_sum,det_fim,crb_sum,objective,iters,wall_time";
inline constexpr std::string_view kRmseHeader =
    "pmax_dbw,seed,crb_sum,rmse,failures,trials,sensing_only_crb_sum";

// One solved run as it appears in sweep.csv / benchmark.csv.
struct RunRow {
    std::string scheme;
    double value = 0.0;
    std::optional<double> value2;
    std::uint64_t seed = 0;
    double lqr_sum = 0.0;
    double det_fim = 0.0;
    double crb_sum = 0.0;
    double objective = 0.0;
    int iters = 0;
    double wall_time = 0.0;
};

// wall_time is copied only when record_time is set; otherwise it is 0 so
// repeated runs produce identical bytes.
[[nodiscard]] RunRow make_row(const SolveReport& rep, double value, bool record_time);

struct RmseRow {
    double pmax_dbw = 0.0;
    std::uint64_t seed = 0;
    double crb_sum = 0.0;
    double rmse = 0.0;
    int failures = 0;
    int trials = 0;
    double sensing_only_crb_sum = 0.0;
};

[[nodiscard]] std::string trace_csv(const SolveReport& rep);
// Uses the two-axis header when the rows carry value2.
[[nodiscard]] std::string sweep_csv(const std::vector<RunRow>& rows);
[[nodiscard]] std::string benchmark_csv(const std::vector<RunRow>& rows);
[[nodiscard]] std::string rmse_csv(const std::vector<RmseRow>& rows);

[[nodiscard]] std::string decision_json(const SolveReport& rep);

struct Manifest {
    std::vector<std::string> command_line;
    std::string scenario_hash;
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    std::vector<std::string> outputs;
};
[[nodiscard]] std::string manifest_json(const Manifest& m);

// FNV-1a 64 of the canonical scenario text, as 16 hex digits.
[[nodiscard]] std::string scenario_hash(const Scenario& scen);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace lawn
