#include "lawn/baselines.hpp"
#include "lawn/experiments.hpp"
#include "lawn/format.hpp"
#include "lawn/parallel.hpp"
#include "lawn/report_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace lawn;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("shortest round-trip number format") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-3.0) == "-3");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, i % 20 - 10);
        const std::string s = format_double(x);
        double y = 0;
        std::from_chars(s.data(), s.data() + s.size(), y);
        CHECK(x == y);
    }
}

TEST_CASE("trace CSV") {
    const auto rep = run_scheme("proposed", Problem(Scenario{}), 1);
    const auto l = lines(trace_csv(rep));
    REQUIRE(l.size() == rep.iterations.size() + 1);
    CHECK(l[0] == "iter,objective,lqr_sum,det_fim,crb_sum");
    CHECK(l[1].rfind("0,", 0) == 0);
}

TEST_CASE("decision JSON") {
    const auto rep = run_scheme("proposed", Problem(Scenario{}), 1);
    const auto j = nlohmann::json::parse(decision_json(rep));
    CHECK(j["theta"].size() == 4);
    CHECK(j["theta"][0].size() == 3);
    CHECK(j["p"].size() == 4);
    CHECK(j["positions"].size() == 4);
    CHECK(j["positions"][0].size() == 3);
    CHECK(j["scheme"] == "proposed");
}

TEST_CASE("manifest JSON") {
    Manifest m;
    m.command_line = {"lawn", "solve"};
    m.scenario_hash = scenario_hash(Scenario{});
    m.outputs = {"trace.csv"};
    const auto j = nlohmann::json::parse(manifest_json(m));
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["tool_version"] == std::string(kToolVersion));
    CHECK(j["scenario_hash"].get<std::string>().size() == 16);
    CHECK(j["outputs"][0] == "trace.csv");
    Scenario other;
    other.seed = 2;
    CHECK(scenario_hash(other) != scenario_hash(Scenario{}));
}

TEST_CASE("sweep rows and determinism") {
    RunGrid g;
    g.values = linspace(-3, 0, 4);
    g.seeds = 3;
    const auto rows = run_sweep(Scenario{}, "pmax_dbw", g);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].value == -3.0);
    CHECK(rows[11].value == 0.0);
    CHECK(rows[4].seed == 2);
    const auto csv = sweep_csv(rows);
    CHECK(lines(csv)[0] == "value,seed,lqr_sum,det_fim,crb_sum,objective,iters,wall_time");
    g.workers = 1;
    CHECK(sweep_csv(run_sweep(Scenario{}, "pmax_dbw", g)) == csv);

    g.param2 = "sigma_w";
    g.values2 = {1e-3, 2e-3};
    const auto grid = run_sweep(Scenario{}, "pmax_dbw", g);
    REQUIRE(grid.size() == 24);
    CHECK(lines(sweep_csv(grid))[0] == "value,value2,seed,lqr_sum,det_fim,crb_sum,objective,iters,wall_time");
    CHECK(*grid[3].value2 == 2e-3);
    RunGrid bad;
    bad.values = {1.0};
    CHECK_THROWS_AS(run_sweep(Scenario{}, "bogus", bad), ValidationError);
}

TEST_CASE("benchmark and rmse tables") {
    RunGrid g;
    g.values = {-3.0, 0.0};
    g.seeds = 2;
    const auto rows = run_benchmark(Scenario{}, {"proposed", "equal_power"}, g);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].scheme == "proposed");
    CHECK(rows[4].scheme == "equal_power");
    const auto l = lines(benchmark_csv(rows));
    CHECK(l[0] == "scheme,pmax_dbw,seed,lqr_sum,det_fim,crb_sum,objective,iters,wall_time");
    CHECK(l[1].rfind("proposed,-3,1,", 0) == 0);

    const auto r = run_rmse(Scenario{}, g, 20);
    REQUIRE(r.size() == 4);
    CHECK(lines(rmse_csv(r))[0] == "pmax_dbw,seed,crb_sum,rmse,failures,trials,sensing_only_crb_sum");
    CHECK(rmse_csv(run_rmse(Scenario{}, g, 20)) == rmse_csv(r));
}

TEST_CASE("linspace") {
    CHECK(linspace(1, 1, 1) == std::vector<double>{1});
    CHECK(linspace(0, 1, 3) == std::vector<double>{0, 0.5, 1});
    CHECK_THROWS_AS(linspace(0, 1, 0), ValidationError);
}

TEST_CASE("parallel_for covers every index once and rethrows") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw SolverError("x"); }, 3), SolverError);
}

TEST_CASE("atomic file write") {
    const auto dir = std::filesystem::temp_directory_path() / "lawn_report_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "a.txt").string();
    write_file_atomic(path, "one\n");
    write_file_atomic(path, "two\n");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "two");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}
