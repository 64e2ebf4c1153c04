#include "lawn/report_io.hpp"

#include "lawn/format.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lawn {

using nlohmann::json;

namespace {

json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

void append_row(std::ostringstream& os, const RunRow& r) {
    os << format_double(r.value) << ',';
    if (r.value2) os << format_double(*r.value2) << ',';
    os << r.seed << ',' << format_double(r.lqr_sum) << ','
       << format_double(r.det_fim) << ',' << format_double(r.crb_sum) << ',' << format_double(r.objective) << ','
       << r.iters << ',' << format_double(r.wall_time) << '\n';
}

}  // namespace

RunRow make_row(const SolveReport& rep, double value, bool record_time) {
    RunRow r;
    r.scheme = rep.scheme;
    r.value = value;
    r.seed = rep.seed;
    r.lqr_sum = rep.last().lqr_sum;
    r.det_fim = rep.last().det_fim;
    r.crb_sum = rep.last().crb_sum;
    r.objective = rep.last().objective;
    r.iters = rep.outer_iterations();
    r.wall_time = record_time ? rep.wall_time : 0.0;
    return r;
}

std::string trace_csv(const SolveReport& rep) {
    std::ostringstream os;
    os << kTraceHeader << '\n';
    for (std::size_t i = 0; i < rep.iterations.size(); ++i) {
        const auto& it = rep.iterations[i];
        os << i << ',' << format_double(it.objective) << ',' << format_double(it.lqr_sum) << ','
           << format_double(it.det_fim) << ',' << format_double(it.crb_sum) << '\n';
    }
    return os.str();
}

std::string sweep_csv(const std::vector<RunRow>& rows) {
    std::ostringstream os;
    const bool grid = !rows.empty() && rows.front().value2.has_value();
    os << (grid ? kGridSweepHeader : kSweepHeader) << '\n';
    for (const auto& r : rows) append_row(os, r);
    return os.str();
}

std::string benchmark_csv(const std::vector<RunRow>& rows) {
    std::ostringstream os;
    os << kBenchmarkHeader << '\n';
    for (const auto& r : rows) {
        os << r.scheme << ',';
        append_row(os, r);
    }
    return os.str();
}

std::string rmse_csv(const std::vector<RmseRow>& rows) {
    std::ostringstream os;
    os << kRmseHeader << '\n';
    for (const auto& r : rows)
        os << format_double(r.pmax_dbw) << ',' << r.seed << ',' << format_double(r.crb_sum) << ','
           << format_double(r.rmse) << ',' << r.failures << ',' << r.trials << ','
           << format_double(r.sensing_only_crb_sum) << '\n';
    return os.str();
}

std::string decision_json(const SolveReport& rep) {
    const auto& d = rep.final;
    json theta = json::array();
    for (int m = 0; m < d.theta.rows(); ++m) {
        json row = json::array();
        for (int k = 0; k < d.theta.cols(); ++k) row.push_back(d.theta(m, k));
        theta.push_back(row);
    }
    json p = json::array();
    for (int m = 0; m < d.p.size(); ++m) p.push_back(d.p(m));
    json q = json::array();
    for (const auto& v : d.q) q.push_back({v.x(), v.y(), v.z()});
    json cost = json::array();
    for (int k = 0; k < rep.per_robot_cost.size(); ++k) cost.push_back(number(rep.per_robot_cost(k)));

    json j;
    j["scheme"] = rep.scheme;
    j["seed"] = rep.seed;
    j["eta"] = rep.eta;
    j["p_max"] = rep.p_max;
    j["stability_enforced"] = rep.stability_enforced;
    j["stable"] = rep.stable;
    j["converged"] = rep.converged;
    j["iterations"] = rep.outer_iterations();
    j["theta"] = theta;
    j["p"] = p;
    j["positions"] = q;
    j["per_robot_cost"] = cost;
    j["objective"] = number(rep.last().objective);
    j["lqr_sum"] = number(rep.last().lqr_sum);
    j["det_fim"] = number(rep.last().det_fim);
    j["crb_sum"] = number(rep.last().crb_sum);
    return j.dump(2) + "\n";
}

std::string manifest_json(const Manifest& m) {
    json j;
    j["tool"] = "lawn";
    j["tool_version"] = std::string(kToolVersion);
    j["schema_version"] = kSchemaVersion;
    j["command_line"] = m.command_line;
    j["scenario_hash"] = m.scenario_hash;
    j["seed"] = m.seed;
    j["wall_time"] = m.wall_time;
    j["outputs"] = m.outputs;
    return j.dump(2) + "\n";
}

std::string scenario_hash(const Scenario& scen) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : save_scenario(scen)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw Error("write to '" + tmp + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

}  // namespace lawn
