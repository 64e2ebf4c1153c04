#include "lawn/scenario.hpp"

#include "lawn/format.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace lawn {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
double dbw_to_watts(double dbw) { return db_to_linear(dbw); }
double watts_to_dbw(double watts) { return linear_to_db(watts); }

RfParams::RfParams()
    : alpha0(db_to_linear(-49.0)),
      beta0(db_to_linear(-50.0)),
      noise_comm(dbm_to_watts(-110.0)),
      noise_sense(dbm_to_watts(-110.0)),
      p_max(dbw_to_watts(-1.0)) {}

bool Geometry::contains(const Vec3& q, double slack) const {
    return area_x.contains(q.x(), slack) && area_y.contains(q.y(), slack) &&
           altitude.contains(q.z(), slack);
}

namespace {

bool same(const PenaltyDcOptions& a, const PenaltyDcOptions& b) {
    return a.mu0 == b.mu0 && a.mu_max == b.mu_max && a.growth == b.growth && a.tol == b.tol &&
           a.max_outer == b.max_outer && a.inner_tol == b.inner_tol && a.inner_max == b.inner_max;
}
bool same(const PgdOptions& a, const PgdOptions& b) {
    return a.step0_frac == b.step0_frac && a.rho_hat == b.rho_hat && a.tol_frac == b.tol_frac &&
           a.max_iter == b.max_iter && a.armijo == b.armijo;
}
bool same(const ScaOptions& a, const ScaOptions& b) {
    return a.trust0 == b.trust0 && a.trust_min == b.trust_min && a.shrink == b.shrink &&
           a.tol == b.tol && a.max_iter == b.max_iter;
}

}  // namespace

bool operator==(const SolverOptions& a, const SolverOptions& b) {
    return a.ao.tol == b.ao.tol && a.ao.max_iter == b.ao.max_iter && same(a.dc, b.dc) &&
           same(a.pgd, b.pgd) && same(a.sca, b.sca);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const Scenario& scen) {
    const auto& g = scen.geometry;
    require(finite(g.area_x.lo) && finite(g.area_x.hi) && g.area_x.hi > g.area_x.lo,
            "area_x interval is empty");
    require(finite(g.area_y.lo) && finite(g.area_y.hi) && g.area_y.hi > g.area_y.lo,
            "area_y interval is empty");
    require(finite(g.altitude.lo) && finite(g.altitude.hi) && g.altitude.hi >= g.altitude.lo,
            "altitude interval is empty");
    require(g.altitude.lo > 0.0, "altitude must be > 0");
    require(finite(g.d_min) && g.d_min > 0.0, "d_min must be > 0");
    require(!g.robots.empty(), "at least one robot is required");
    require(g.n_uav >= g.n_robot(), "n_uav < robot count");
    for (const auto& u : g.robots) require(u.allFinite(), "robot position is not finite");
    require(g.target.allFinite(), "target position is not finite");
    require(greedy_packing_count(g) >= g.n_uav,
            "no packing of n_uav UAVs at pairwise distance d_min fits the flight area");

    const auto& rf = scen.rf;
    for (double v : {rf.alpha0, rf.beta0, rf.noise_comm, rf.noise_sense, rf.bandwidth,
                     rf.gp_factor, rf.rho, rf.uses_per_step, rf.p_max}) {
        require(finite(v) && v > 0.0, "rf parameters must be strictly positive");
    }
    require(rf.bler > 0.0 && rf.bler < 0.5, "bler must lie in (0, 0.5)");
    require(finite(rf.blocklength) && rf.blocklength >= 1.0, "blocklength must be >= 1");

    const auto& w = scen.weights;
    require(w.eta >= 0.0 && w.eta <= 1.0, "eta must lie in [0, 1]");
    require(!w.psi_c || (finite(*w.psi_c) && *w.psi_c > 0.0), "psi_c must be > 0");
    require(!w.psi_s || (finite(*w.psi_s) && *w.psi_s > 0.0), "psi_s must be > 0");

    const auto& c = scen.control;
    require(c.iota >= 1, "iota must be >= 1");
    require(c.zeta == c.iota, "zeta must equal iota (C = I)");
    require(finite(c.sigma_v) && c.sigma_v > 0.0, "sigma_v must be > 0");
    require(finite(c.sigma_w) && c.sigma_w >= 0.0, "sigma_w must be >= 0");
    require(finite(c.q_weight) && c.q_weight > 0.0, "q_weight must be > 0");
    require(finite(c.r_weight) && c.r_weight >= 0.0, "r_weight must be >= 0");
    require(c.entropy_range.lo >= 0.0 && c.entropy_range.hi >= c.entropy_range.lo,
            "entropy_range must be a non-negative interval");
    if (c.entropy_rates) {
        require(static_cast<int>(c.entropy_rates->size()) == g.n_robot(),
                "entropy_rates count must equal robot count");
        for (double v : *c.entropy_rates) require(finite(v) && v >= 0.0, "entropy rates must be >= 0");
    }

    const auto& s = scen.solver;
    require(s.ao.tol > 0.0 && s.ao.max_iter >= 0, "invalid ao options");
    require(s.dc.mu0 > 0.0 && s.dc.growth > 1.0 && s.dc.mu_max >= s.dc.mu0 && s.dc.tol > 0.0 &&
                s.dc.inner_tol > 0.0 && s.dc.max_outer >= 1 && s.dc.inner_max >= 1,
            "invalid penalty-dc options");
    require(s.pgd.step0_frac > 0.0 && s.pgd.rho_hat > 0.0 && s.pgd.tol_frac > 0.0 &&
                s.pgd.max_iter >= 0,
            "invalid pgd options");
    require(s.sca.trust0 > s.sca.trust_min && s.sca.trust_min > 0.0 && s.sca.shrink > 0.0 &&
                s.sca.shrink < 1.0 && s.sca.tol > 0.0 && s.sca.max_iter >= 0,
            "invalid sca options");
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

struct Ctx {
    int line;
    std::string key;
};

[[noreturn]] void bad(const Ctx& ctx, const std::string& what) {
    throw ConfigError("line " + std::to_string(ctx.line) + ": key '" + ctx.key + "': " + what,
                      ctx.line, ctx.key);
}

double as_number(const json& v, const Ctx& ctx) {
    if (!v.is_number()) bad(ctx, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const Ctx& ctx) {
    if (!v.is_number_integer()) bad(ctx, "expected an integer");
    return v.get<int>();
}

bool as_bool(const json& v, const Ctx& ctx) {
    if (!v.is_boolean()) bad(ctx, "expected true or false");
    return v.get<bool>();
}

Interval as_interval(const json& v, const Ctx& ctx) {
    if (!v.is_array() || v.size() != 2) bad(ctx, "expected [lo, hi]");
    return {as_number(v[0], ctx), as_number(v[1], ctx)};
}

Vec3 as_point(const json& v, const Ctx& ctx) {
    if (!v.is_array() || v.size() != 3) bad(ctx, "expected [x, y, z]");
    return {as_number(v[0], ctx), as_number(v[1], ctx), as_number(v[2], ctx)};
}

std::optional<double> as_normalizer(const json& v, const Ctx& ctx) {
    if (v.is_string()) {
        if (v.get<std::string>() == "auto") return std::nullopt;
        bad(ctx, "expected a number or \"auto\"");
    }
    return as_number(v, ctx);
}

using Setter = std::function<void(Scenario&, const json&, const Ctx&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["seed"] = [](Scenario& s, const json& v, const Ctx& c) {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                bad(c, "expected a non-negative integer");
            s.seed = v.get<std::uint64_t>();
        };

        t["geometry.area_x"] = [](Scenario& s, const json& v, const Ctx& c) { s.geometry.area_x = as_interval(v, c); };
        t["geometry.area_y"] = [](Scenario& s, const json& v, const Ctx& c) { s.geometry.area_y = as_interval(v, c); };
        t["geometry.altitude"] = [](Scenario& s, const json& v, const Ctx& c) {
            if (v.is_array()) {
                s.geometry.altitude = as_interval(v, c);
            } else {
                double z = as_number(v, c);
                s.geometry.altitude = {z, z};
            }
        };
        t["geometry.d_min"] = [](Scenario& s, const json& v, const Ctx& c) { s.geometry.d_min = as_number(v, c); };
        t["geometry.n_uav"] = [](Scenario& s, const json& v, const Ctx& c) { s.geometry.n_uav = as_int(v, c); };
        t["geometry.robots"] = [](Scenario& s, const json& v, const Ctx& c) {
            if (!v.is_array()) bad(c, "expected a list of [x, y, z]");
            s.geometry.robots.clear();
            for (const auto& e : v) s.geometry.robots.push_back(as_point(e, c));
        };
        t["geometry.target"] = [](Scenario& s, const json& v, const Ctx& c) { s.geometry.target = as_point(v, c); };

        t["rf.alpha0"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.alpha0 = as_number(v, c); };
        t["rf.alpha0_db"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.alpha0 = db_to_linear(as_number(v, c)); };
        t["rf.beta0"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.beta0 = as_number(v, c); };
        t["rf.beta0_db"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.beta0 = db_to_linear(as_number(v, c)); };
        t["rf.noise_comm"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.noise_comm = as_number(v, c); };
        t["rf.noise_comm_dbm"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.noise_comm = dbm_to_watts(as_number(v, c)); };
        t["rf.noise_sense"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.noise_sense = as_number(v, c); };
        t["rf.noise_sense_dbm"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.noise_sense = dbm_to_watts(as_number(v, c)); };
        t["rf.bandwidth"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.bandwidth = as_number(v, c); };
        t["rf.gp_factor"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.gp_factor = as_number(v, c); };
        t["rf.rho"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.rho = as_number(v, c); };
        t["rf.bler"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.bler = as_number(v, c); };
        t["rf.blocklength"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.blocklength = as_number(v, c); };
        t["rf.uses_per_step"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.uses_per_step = as_number(v, c); };
        t["rf.p_max"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.p_max = as_number(v, c); };
        t["rf.pmax_dbw"] = [](Scenario& s, const json& v, const Ctx& c) { s.rf.p_max = dbw_to_watts(as_number(v, c)); };
        t["rf.rate_convention"] = [](Scenario& s, const json& v, const Ctx& c) {
            if (v == "bits") {
                s.rf.convention = RateConvention::bits;
            } else if (v == "nats") {
                s.rf.convention = RateConvention::nats;
            } else {
                bad(c, "expected \"bits\" or \"nats\"");
            }
        };

        t["control.iota"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.iota = as_int(v, c); };
        t["control.zeta"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.zeta = as_int(v, c); };
        t["control.sigma_v"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.sigma_v = as_number(v, c); };
        t["control.sigma_w"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.sigma_w = as_number(v, c); };
        t["control.q_weight"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.q_weight = as_number(v, c); };
        t["control.r_weight"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.r_weight = as_number(v, c); };
        t["control.entropy_range"] = [](Scenario& s, const json& v, const Ctx& c) { s.control.entropy_range = as_interval(v, c); };
        t["control.entropy_rates"] = [](Scenario& s, const json& v, const Ctx& c) {
            if (!v.is_array()) bad(c, "expected a list of numbers");
            std::vector<double> g;
            for (const auto& e : v) g.push_back(as_number(e, c));
            s.control.entropy_rates = std::move(g);
        };

        t["objective.eta"] = [](Scenario& s, const json& v, const Ctx& c) { s.weights.eta = as_number(v, c); };
        t["objective.psi_c"] = [](Scenario& s, const json& v, const Ctx& c) { s.weights.psi_c = as_normalizer(v, c); };
        t["objective.psi_s"] = [](Scenario& s, const json& v, const Ctx& c) { s.weights.psi_s = as_normalizer(v, c); };

        t["solver.ao_tol"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.ao.tol = as_number(v, c); };
        t["solver.ao_max_iter"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.ao.max_iter = as_int(v, c); };
        t["solver.dc_mu0"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.mu0 = as_number(v, c); };
        t["solver.dc_mu_max"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.mu_max = as_number(v, c); };
        t["solver.dc_growth"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.growth = as_number(v, c); };
        t["solver.dc_tol"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.tol = as_number(v, c); };
        t["solver.dc_max_outer"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.max_outer = as_int(v, c); };
        t["solver.dc_inner_tol"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.inner_tol = as_number(v, c); };
        t["solver.dc_inner_max"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.dc.inner_max = as_int(v, c); };
        t["solver.pgd_step0_frac"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.pgd.step0_frac = as_number(v, c); };
        t["solver.pgd_rho_hat"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.pgd.rho_hat = as_number(v, c); };
        t["solver.pgd_tol_frac"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.pgd.tol_frac = as_number(v, c); };
        t["solver.pgd_max_iter"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.pgd.max_iter = as_int(v, c); };
        t["solver.pgd_armijo"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.pgd.armijo = as_bool(v, c); };
        t["solver.sca_trust0"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.sca.trust0 = as_number(v, c); };
        t["solver.sca_trust_min"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.sca.trust_min = as_number(v, c); };
        t["solver.sca_shrink"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.sca.shrink = as_number(v, c); };
        t["solver.sca_tol"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.sca.tol = as_number(v, c); };
        t["solver.sca_max_iter"] = [](Scenario& s, const json& v, const Ctx& c) { s.solver.sca.max_iter = as_int(v, c); };
        return t;
    }();
    return table;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Drops a trailing '#' comment that is not inside a JSON string.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (ch == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (ch == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

}  // namespace

Scenario load_scenario(std::string_view text) {
    Scenario scen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header", line_no, line);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section != "geometry" && section != "rf" && section != "control" &&
                section != "objective" && section != "solver") {
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section '" + section + "'", line_no, section);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no, line);
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;
        const Ctx ctx{line_no, full};

        const auto it = setters().find(full);
        if (it == setters().end()) bad(ctx, "unknown key");
        json parsed;
        try {
            parsed = json::parse(value);
        } catch (const json::parse_error&) {
            bad(ctx, "malformed value '" + value + "'");
        }
        it->second(scen, parsed, ctx);
    }
    validate(scen);
    return scen;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'", 0, path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

namespace {

std::string num(double x) { return format_double(x); }

std::string interval(const Interval& i) { return "[" + num(i.lo) + ", " + num(i.hi) + "]"; }

std::string point(const Vec3& v) {
    return "[" + num(v.x()) + ", " + num(v.y()) + ", " + num(v.z()) + "]";
}

std::string normalizer(const std::optional<double>& v) { return v ? num(*v) : "\"auto\""; }

}  // namespace

std::string save_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "seed = " << s.seed << "\n\n";

    const auto& g = s.geometry;
    out << "[geometry]\n";
    out << "area_x = " << interval(g.area_x) << "\n";
    out << "area_y = " << interval(g.area_y) << "\n";
    if (g.fixed_altitude()) {
        out << "altitude = " << num(g.altitude.lo) << "\n";
    } else {
        out << "altitude = " << interval(g.altitude) << "\n";
    }
    out << "d_min = " << num(g.d_min) << "\n";
    out << "n_uav = " << g.n_uav << "\n";
    out << "robots = [";
    for (std::size_t i = 0; i < g.robots.size(); ++i) out << (i ? ", " : "") << point(g.robots[i]);
    out << "]\n";
    out << "target = " << point(g.target) << "\n\n";

    const auto& rf = s.rf;
    out << "[rf]\n";
    out << "alpha0 = " << num(rf.alpha0) << "\n";
    out << "beta0 = " << num(rf.beta0) << "\n";
    out << "noise_comm = " << num(rf.noise_comm) << "\n";
    out << "noise_sense = " << num(rf.noise_sense) << "\n";
    out << "bandwidth = " << num(rf.bandwidth) << "\n";
    out << "gp_factor = " << num(rf.gp_factor) << "\n";
    out << "rho = " << num(rf.rho) << "\n";
    out << "bler = " << num(rf.bler) << "\n";
    out << "blocklength = " << num(rf.blocklength) << "\n";
    out << "uses_per_step = " << num(rf.uses_per_step) << "\n";
    out << "p_max = " << num(rf.p_max) << "\n";
    out << "rate_convention = \"" << (rf.convention == RateConvention::bits ? "bits" : "nats") << "\"\n\n";

    const auto& c = s.control;
    out << "[control]\n";
    out << "iota = " << c.iota << "\n";
    out << "zeta = " << c.zeta << "\n";
    out << "sigma_v = " << num(c.sigma_v) << "\n";
    out << "sigma_w = " << num(c.sigma_w) << "\n";
    out << "q_weight = " << num(c.q_weight) << "\n";
    out << "r_weight = " << num(c.r_weight) << "\n";
    out << "entropy_range = " << interval(c.entropy_range) << "\n";
    if (c.entropy_rates) {
        out << "entropy_rates = [";
        for (std::size_t i = 0; i < c.entropy_rates->size(); ++i) out << (i ? ", " : "") << num((*c.entropy_rates)[i]);
        out << "]\n";
    }
    out << "\n";

    out << "[objective]\n";
    out << "eta = " << num(s.weights.eta) << "\n";
    out << "psi_c = " << normalizer(s.weights.psi_c) << "\n";
    out << "psi_s = " << normalizer(s.weights.psi_s) << "\n\n";

    const auto& o = s.solver;
    out << "[solver]\n";
    out << "ao_tol = " << num(o.ao.tol) << "\n";
    out << "ao_max_iter = " << o.ao.max_iter << "\n";
    out << "dc_mu0 = " << num(o.dc.mu0) << "\n";
    out << "dc_mu_max = " << num(o.dc.mu_max) << "\n";
    out << "dc_growth = " << num(o.dc.growth) << "\n";
    out << "dc_tol = " << num(o.dc.tol) << "\n";
    out << "dc_max_outer = " << o.dc.max_outer << "\n";
    out << "dc_inner_tol = " << num(o.dc.inner_tol) << "\n";
    out << "dc_inner_max = " << o.dc.inner_max << "\n";
    out << "pgd_step0_frac = " << num(o.pgd.step0_frac) << "\n";
    out << "pgd_rho_hat = " << num(o.pgd.rho_hat) << "\n";
    out << "pgd_tol_frac = " << num(o.pgd.tol_frac) << "\n";
    out << "pgd_max_iter = " << o.pgd.max_iter << "\n";
    out << "pgd_armijo = " << (o.pgd.armijo ? "true" : "false") << "\n";
    out << "sca_trust0 = " << num(o.sca.trust0) << "\n";
    out << "sca_trust_min = " << num(o.sca.trust_min) << "\n";
    out << "sca_shrink = " << num(o.sca.shrink) << "\n";
    out << "sca_tol = " << num(o.sca.tol) << "\n";
    out << "sca_max_iter = " << o.sca.max_iter << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Randomization
// ---------------------------------------------------------------------------

std::vector<double> entropy_rates(const Scenario& scen) {
    if (scen.control.entropy_rates) return *scen.control.entropy_rates;
    // Separate stream from the position generator so the two stay independent.
    std::mt19937_64 rng(scen.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> dist(scen.control.entropy_range.lo, scen.control.entropy_range.hi);
    std::vector<double> g(static_cast<std::size_t>(scen.n_robot()));
    for (auto& v : g) v = scen.control.entropy_range.width() > 0.0 ? dist(rng) : scen.control.entropy_range.lo;
    return g;
}

Positions random_positions(const Geometry& geometry, std::uint64_t seed) {
    constexpr int kRounds = 200;
    constexpr int kTriesPerPoint = 500;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(geometry.area_x.lo, geometry.area_x.hi);
    std::uniform_real_distribution<double> uy(geometry.area_y.lo, geometry.area_y.hi);
    std::uniform_real_distribution<double> uz(geometry.altitude.lo, geometry.altitude.hi);
    const double d2 = geometry.d_min * geometry.d_min;

    Positions pts;
    for (int round = 0; round < kRounds; ++round) {
        pts.clear();
        bool stuck = false;
        while (static_cast<int>(pts.size()) < geometry.n_uav && !stuck) {
            stuck = true;
            for (int attempt = 0; attempt < kTriesPerPoint; ++attempt) {
                Vec3 cand(ux(rng), uy(rng), geometry.fixed_altitude() ? geometry.altitude.lo : uz(rng));
                bool ok = true;
                for (const auto& q : pts) {
                    if ((q - cand).squaredNorm() < d2) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    pts.push_back(cand);
                    stuck = false;
                    break;
                }
            }
        }
        if (static_cast<int>(pts.size()) == geometry.n_uav) return pts;
    }
    throw SolverError("random_positions: could not place " + std::to_string(geometry.n_uav) +
                      " UAVs at pairwise distance " + format_double(geometry.d_min) + " after " +
                      std::to_string(kRounds) + " rounds (flight area too tight)");
}

int greedy_packing_count(const Geometry& g) {
    if (g.d_min <= 0.0 || g.n_uav <= 0) return g.n_uav;
    const double step = g.d_min / 8.0;
    const auto count = [&](const Interval& i) {
        return std::max(1, static_cast<int>(std::floor(i.width() / step)) + 1);
    };
    const int nx = std::min(count(g.area_x), 2000);
    const int ny = std::min(count(g.area_y), 2000);
    const int nz = g.fixed_altitude() ? 1 : std::min(count(g.altitude), 200);
    const auto coord = [](const Interval& i, int n, int idx) {
        return n == 1 ? i.lo : i.lo + i.width() * idx / (n - 1);
    };
    const double d2 = g.d_min * g.d_min;
    Positions placed;
    for (int iz = 0; iz < nz; ++iz) {
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                Vec3 c(coord(g.area_x, nx, ix), coord(g.area_y, ny, iy), coord(g.altitude, nz, iz));
                bool ok = true;
                for (const auto& q : placed) {
                    if ((q - c).squaredNorm() < d2) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    placed.push_back(c);
                    if (static_cast<int>(placed.size()) >= g.n_uav) return g.n_uav;
                }
            }
        }
    }
    return static_cast<int>(placed.size());
}

}  // namespace lawn
