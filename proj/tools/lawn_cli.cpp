// lawn: batch runner for the sensing/communication/control co-design solver.
//
//   lawn solve     --scenario FILE --eta 0.5 --seed 3 --out DIR
//   lawn sweep     --param pmax_dbw --from -3 --to 0 --steps 4 --seeds 20 --out DIR
//   lawn benchmark --schemes proposed,equal_power --seeds 20 --out DIR
//   lawn rmse      --trials 100 --seed 1 --out DIR
//
// Exit status: 0 ok, 1 solver abort, 2 input error.

#include "lawn/baselines.hpp"
#include "lawn/experiments.hpp"
#include "lawn/report_io.hpp"
#include "lawn/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace lawn;

struct Common {
    std::string scenario_path;
    std::optional<double> eta;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::string convention;
    bool literal_bandwidth = false;
    unsigned threads = 0;
    bool timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--scenario", c.scenario_path, "scenario file (defaults apply when omitted)");
    cmd->add_option("--eta", c.eta, "control/sensing weight in [0, 1]");
    cmd->add_option("--seed", c.seed, "scenario seed (first seed for multi-seed commands)");
    cmd->add_option("--out", c.out_dir, "output directory");
    cmd->add_option("--rate-convention", c.convention, "dispersion penalty units")->check(CLI::IsMember({"bits", "nats"}));
    cmd->add_flag("--literal-bandwidth", c.literal_bandwidth, "one control step spans B channel uses");
    cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
    cmd->add_flag("--timing", c.timing, "record wall times in CSV rows (breaks byte-reproducibility)");
}

Scenario load(const Common& c) {
    Scenario s = c.scenario_path.empty() ? load_scenario("") : load_scenario_file(c.scenario_path);
    if (c.eta) s.weights.eta = *c.eta;
    if (c.seed) s.seed = *c.seed;
    if (c.convention == "nats") s.rf.convention = RateConvention::nats;
    if (c.convention == "bits") s.rf.convention = RateConvention::bits;
    if (c.literal_bandwidth) s.rf.uses_per_step = s.rf.bandwidth;
    validate(s);
    return s;
}

class Outputs {
public:
    Outputs(std::string dir, std::vector<std::string> argv) : dir_(std::move(dir)), argv_(std::move(argv)) {
        std::filesystem::create_directories(dir_);
    }
    void write(const std::string& name, const std::string& content) {
        write_file_atomic((std::filesystem::path(dir_) / name).string(), content);
        files_.push_back(name);
    }
    void finish(const Scenario& scen, double wall_time) {
        Manifest m;
        m.command_line = argv_;
        m.scenario_hash = scenario_hash(scen);
        m.seed = scen.seed;
        m.wall_time = wall_time;
        m.outputs = files_;
        write_file_atomic((std::filesystem::path(dir_) / "manifest.json").string(), manifest_json(m));
    }

private:
    std::string dir_;
    std::vector<std::string> argv_;
    std::vector<std::string> files_;
};

RunGrid grid_from(const Common& c, const Scenario& scen, std::vector<double> values, int seeds) {
    RunGrid g;
    g.values = std::move(values);
    g.seeds = seeds;
    g.first_seed = scen.seed;
    g.workers = c.threads;
    g.record_time = c.timing;
    return g;
}

void warn_unstable(const std::vector<RunRow>& rows) {
    for (const auto& r : rows)
        if (!std::isfinite(r.lqr_sum))
            std::cerr << "warning: " << r.scheme << " at value " << r.value << ", seed " << r.seed
                      << " ends outside the assuredly-stable region (lqr_sum = inf)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint sensing, communication and control co-design for multi-UAV networks"};
    app.require_subcommand(1);
    std::vector<std::string> args(argv, argv + argc);

    Common solve_c, sweep_c, bench_c, rmse_c;
    auto* solve_cmd = app.add_subcommand("solve", "run one solve; writes trace.csv, decision.json, manifest.json");
    add_common(solve_cmd, solve_c);
    std::string scheme = "proposed";
    solve_cmd->add_option("--scheme", scheme, "proposed or a baseline")->check(CLI::IsMember(scheme_names()));

    auto* sweep_cmd = app.add_subcommand("sweep", "solve over a parameter range; writes sweep.csv");
    add_common(sweep_cmd, sweep_c);
    std::string param;
    double from = 0.0, to = 0.0;
    int steps = 1, sweep_seeds = 1;
    sweep_cmd->add_option("--param", param, "swept parameter")->required()->check(CLI::IsMember(sweep_parameters()));
    sweep_cmd->add_option("--from", from, "first value")->required();
    sweep_cmd->add_option("--to", to, "last value")->required();
    sweep_cmd->add_option("--steps", steps, "number of values")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seeds", sweep_seeds, "seeds per value")->check(CLI::PositiveNumber);
    std::string param2;
    double from2 = 0.0, to2 = 0.0;
    int steps2 = 1;
    auto* p2 = sweep_cmd->add_option("--param2", param2, "second swept parameter (contour grid)")
                   ->check(CLI::IsMember(sweep_parameters()));
    sweep_cmd->add_option("--from2", from2, "first value of the second axis")->needs(p2);
    sweep_cmd->add_option("--to2", to2, "last value of the second axis")->needs(p2);
    sweep_cmd->add_option("--steps2", steps2, "values on the second axis")->check(CLI::PositiveNumber)->needs(p2);

    auto* bench_cmd = app.add_subcommand("benchmark", "compare schemes over P_max; writes benchmark.csv");
    add_common(bench_cmd, bench_c);
    std::vector<std::string> schemes{"proposed", "equal_power", "random_positioning", "water_filling"};
    double b_from = -3.0, b_to = 0.0;
    int b_steps = 4, bench_seeds = 20;
    bench_cmd->add_option("--schemes", schemes, "comma-separated scheme list")
        ->delimiter(',')
        ->check(CLI::IsMember(scheme_names()));
    bench_cmd->add_option("--pmax-from", b_from, "first P_max in dBW");
    bench_cmd->add_option("--pmax-to", b_to, "last P_max in dBW");
    bench_cmd->add_option("--steps", b_steps, "number of P_max values")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seeds", bench_seeds, "seeds per point")->check(CLI::PositiveNumber);

    auto* rmse_cmd = app.add_subcommand("rmse", "Monte Carlo localization RMSE vs CRB over P_max; writes rmse.csv");
    add_common(rmse_cmd, rmse_c);
    int trials = 100, rmse_seeds = 1, r_steps = 4;
    double r_from = -3.0, r_to = 0.0;
    rmse_cmd->add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    rmse_cmd->add_option("--seeds", rmse_seeds, "seeds per point")->check(CLI::PositiveNumber);
    rmse_cmd->add_option("--pmax-from", r_from, "first P_max in dBW");
    rmse_cmd->add_option("--pmax-to", r_to, "last P_max in dBW");
    rmse_cmd->add_option("--steps", r_steps, "number of P_max values")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    try {
        if (*solve_cmd) {
            const Scenario scen = load(solve_c);
            const Problem prob(scen);
            const auto rep = run_scheme(scheme, prob, scen.seed);
            if (prob.enforce_stability() && scheme != "sensing_only") require_stable(rep, prob);
            Outputs out(solve_c.out_dir, args);
            out.write("trace.csv", trace_csv(rep));
            out.write("decision.json", decision_json(rep));
            out.finish(scen, elapsed());
            std::cout << "objective " << rep.last().objective << "  lqr_sum " << rep.last().lqr_sum << "  det_fim "
                      << rep.last().det_fim << "  crb_sum " << rep.last().crb_sum << "  iterations "
                      << rep.outer_iterations() << (rep.converged ? "" : " (not converged)") << "\n";
        } else if (*sweep_cmd) {
            const Scenario scen = load(sweep_c);
            auto grid = grid_from(sweep_c, scen, linspace(from, to, steps), sweep_seeds);
            if (!param2.empty()) {
                grid.param2 = param2;
                grid.values2 = linspace(from2, to2, steps2);
            }
            const auto rows = run_sweep(scen, param, grid);
            warn_unstable(rows);
            Outputs out(sweep_c.out_dir, args);
            out.write("sweep.csv", sweep_csv(rows));
            out.finish(scen, elapsed());
        } else if (*bench_cmd) {
            const Scenario scen = load(bench_c);
            const auto rows =
                run_benchmark(scen, schemes, grid_from(bench_c, scen, linspace(b_from, b_to, b_steps), bench_seeds));
            warn_unstable(rows);
            Outputs out(bench_c.out_dir, args);
            out.write("benchmark.csv", benchmark_csv(rows));
            out.finish(scen, elapsed());
        } else if (*rmse_cmd) {
            const Scenario scen = load(rmse_c);
            const auto rows = run_rmse(scen, grid_from(rmse_c, scen, linspace(r_from, r_to, r_steps), rmse_seeds), trials);
            Outputs out(rmse_c.out_dir, args);
            out.write("rmse.csv", rmse_csv(rows));
            out.finish(scen, elapsed());
        }
    } catch (const ConfigError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const StabilityError& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
