#include "bw/config.hpp"

#include <cmath>
#include <regex>
#include <set>
#include <sstream>

#include "bw/error.hpp"

namespace bw {

namespace {

class Collector {
public:
    void add(const std::string& path, const std::string& msg) { errors_.push_back(path + ": " + msg); }
    bool empty() const { return errors_.empty(); }
    std::string joined() const {
        std::string s;
        for (const auto& e : errors_) s += (s.empty() ? "" : "\n") + e;
        return s;
    }

private:
    std::vector<std::string> errors_;
};

void reject_unknown(const ojson& obj, const std::string& path, std::initializer_list<const char*> known, Collector& c) {
    std::set<std::string> k(known.begin(), known.end());
    for (const auto& [key, _] : obj.items())
        if (!k.count(key)) c.add(path + "." + key, "unknown field");
}

void read_number(const ojson& obj, const char* key, const std::string& path, double& out, Collector& c) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
        c.add(path + "." + key, "must be a finite number");
        return;
    }
    out = v.get<double>();
}

void read_coeffs(const ojson& obj, const char* key, const std::string& path, std::vector<double>& out, Collector& c) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
        c.add(path + "." + key, "must be a non-empty array of coefficients");
        return;
    }
    std::vector<double> tmp;
    for (const auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) {
            c.add(path + "." + key, "coefficients must be finite numbers");
            return;
        }
        tmp.push_back(e.get<double>());
    }
    out = std::move(tmp);
}

void read_window(const ojson& obj, const char* key, const std::string& path, std::pair<double, double>& out,
                 Collector& c) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        c.add(path + "." + key, "must be [t_start, t_stop]");
        return;
    }
    out = {v[0].get<double>(), v[1].get<double>()};
    if (!(out.first < out.second)) c.add(path + "." + key, "t_start must be below t_stop");
}

ReactionConfig parse_reaction(const ojson& v, Collector& c) {
    const std::string path = "reaction";
    if (v.is_string()) {
        try {
            return reaction_preset(v.get<std::string>());
        } catch (const Error& e) {
            c.add(path, e.what());
            return {};
        }
    }
    if (!v.is_object()) {
        c.add(path, "must be a preset name or an object");
        return {};
    }
    reject_unknown(v, path, {"preset", "name", "a", "f0", "f1", "branch_rule"}, c);
    ReactionConfig r;
    if (v.contains("preset")) {
        if (!v["preset"].is_string()) {
            c.add(path + ".preset", "must be a string");
        } else {
            try {
                r = reaction_preset(v["preset"].get<std::string>());
            } catch (const Error& e) {
                c.add(path + ".preset", e.what());
            }
        }
    } else {
        r.name = "custom";
        if (!v.contains("f0")) c.add(path + ".f0", "required for an inline reaction");
        if (!v.contains("f1")) c.add(path + ".f1", "required for an inline reaction");
        if (!v.contains("a")) c.add(path + ".a", "required for an inline reaction");
    }
    if (v.contains("name") && v["name"].is_string()) r.name = v["name"].get<std::string>();
    read_number(v, "a", path, r.a, c);
    read_coeffs(v, "f0", path, r.f0, c);
    read_coeffs(v, "f1", path, r.f1, c);
    if (v.contains("branch_rule")) {
        try {
            r.branch_rule = parse_branch_rule(v["branch_rule"].is_string() ? v["branch_rule"].get<std::string>() : "");
        } catch (const Error&) {
            c.add(path + ".branch_rule", "must be left_closed, right_closed or average");
        }
    }
    if (!(r.a > 0.0 && r.a < 1.0)) c.add(path + ".a", "must lie in (0,1)");
    return r;
}

InitialCondition parse_ic(const std::string& s) {
    if (s == "step") return InitialCondition::step;
    if (s == "wave") return InitialCondition::wave;
    if (s == "wave_plus_delta") return InitialCondition::wave_plus_delta;
    if (s == "custom_table") return InitialCondition::custom_table;
    throw Error(ErrorKind::Config, "unknown initial condition");
}

ojson number_array(const std::vector<double>& v) {
    ojson a = ojson::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

std::string to_string(InitialCondition ic) {
    switch (ic) {
        case InitialCondition::step: return "step";
        case InitialCondition::wave: return "wave";
        case InitialCondition::wave_plus_delta: return "wave_plus_delta";
        case InitialCondition::custom_table: return "custom_table";
    }
    return "step";
}

ReactionConfig reaction_preset(const std::string& name) {
    if (name == "quadratic_demo") return ReactionConfig{};
    static const std::regex pl(R"(\s*piecewise_linear\s*\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\)\s*)");
    std::smatch m;
    if (std::regex_match(name, m, pl)) {
        const double k = std::stod(m[1].str());
        const double a = std::stod(m[2].str());
        return ReactionConfig{name, a, {0.0, k}, {-k, k}, BranchRule::right_closed};
    }
    throw Error(ErrorKind::Config, "unknown preset '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig parse_config(const ojson& doc) {
    Collector c;
    RunConfig cfg;
    if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    reject_unknown(doc, "config", {"reaction", "solver", "grid", "experiment", "output", "schema_version"}, c);

    if (doc.contains("reaction")) cfg.reaction = parse_reaction(doc["reaction"], c);

    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        if (!s.is_object()) {
            c.add("solver", "must be an object");
        } else {
            reject_unknown(s, "solver", {"eps", "rtol", "tol_c", "dz", "u_eps", "u_eps_reference"}, c);
            read_number(s, "eps", "solver", cfg.solver.eps, c);
            read_number(s, "rtol", "solver", cfg.solver.rtol, c);
            read_number(s, "tol_c", "solver", cfg.solver.tol_c, c);
            read_number(s, "dz", "solver", cfg.solver.dz, c);
            read_number(s, "u_eps", "solver", cfg.solver.u_eps, c);
            read_number(s, "u_eps_reference", "solver", cfg.solver.u_eps_reference, c);
        }
    }
    const auto& sv = cfg.solver;
    if (sv.eps < 0.0) c.add("solver.eps", "must be >= 0 (0 selects the default)");
    if (sv.eps > 0.0 && sv.eps > std::min(cfg.reaction.a, 1.0 - cfg.reaction.a) / 100.0)
        c.add("solver.eps", "must not exceed min(a, 1-a)/100");
    if (!(sv.rtol > 0.0 && sv.rtol < 1e-3)) c.add("solver.rtol", "must lie in (0, 1e-3)");
    if (!(sv.tol_c > 0.0)) c.add("solver.tol_c", "must be positive");
    if (!(sv.dz > 0.0)) c.add("solver.dz", "must be positive");
    if (!(sv.u_eps > 0.0 && sv.u_eps <= 1e-3)) c.add("solver.u_eps", "must lie in (0, 1e-3]");
    if (!(sv.u_eps_reference > 0.0 && sv.u_eps_reference <= 1e-3))
        c.add("solver.u_eps_reference", "must lie in (0, 1e-3]");

    bool dt_given = false;
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        if (!g.is_object()) {
            c.add("grid", "must be an object");
        } else {
            reject_unknown(g, "grid", {"x_min", "x_max", "dx", "dt", "bc"}, c);
            read_number(g, "x_min", "grid", cfg.grid.x_min, c);
            read_number(g, "x_max", "grid", cfg.grid.x_max, c);
            read_number(g, "dx", "grid", cfg.grid.dx, c);
            dt_given = g.contains("dt");
            read_number(g, "dt", "grid", cfg.grid.dt, c);
            if (g.contains("bc")) {
                try {
                    cfg.grid.bc = parse_boundary_condition(g["bc"].is_string() ? g["bc"].get<std::string>() : "");
                } catch (const Error&) {
                    c.add("grid.bc", "must be dirichlet01 or neumann");
                }
            }
        }
    }
    if (!dt_given) cfg.grid.dt = cfg.grid.dx / 5.0;
    const auto& g = cfg.grid;
    if (!(g.dx > 0.0)) c.add("grid.dx", "must be positive");
    if (!(g.dt > 0.0)) c.add("grid.dt", "must be positive");
    if (!(g.x_max > g.x_min)) c.add("grid.x_max", "must exceed grid.x_min");
    if (g.dx > 0.0 && g.x_max > g.x_min) {
        const double n = (g.x_max - g.x_min) / g.dx;
        if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) c.add("grid.dx", "(x_max-x_min)/dx must be an integer");
        else if (std::round(n) < 16) c.add("grid.dx", "grid needs at least 16 intervals");
    }
    try {
        const auto term = cfg.reaction.term();
        const double bound = dt_stability(term);
        if (g.dt > bound) {
            std::ostringstream os;
            os.precision(17);
            os << "dt=" << g.dt << " exceeds dt_stability=" << bound << " (1.9/max(K0,K1))";
            c.add("grid.dt", os.str());
        }
    } catch (const Error& e) {
        c.add("reaction", e.what());
    }

    if (doc.contains("experiment")) {
        const auto& e = doc["experiment"];
        if (!e.is_object()) {
            c.add("experiment", "must be an object");
        } else {
            reject_unknown(e, "experiment",
                           {"t_end", "observe_every", "initial_condition", "step_position", "delta", "z0", "window",
                            "speed_window", "custom_table"},
                           c);
            read_number(e, "t_end", "experiment", cfg.experiment.t_end, c);
            read_number(e, "observe_every", "experiment", cfg.experiment.observe_every, c);
            read_number(e, "step_position", "experiment", cfg.experiment.step_position, c);
            read_number(e, "delta", "experiment", cfg.experiment.delta, c);
            read_number(e, "z0", "experiment", cfg.experiment.z0, c);
            read_window(e, "window", "experiment", cfg.experiment.window, c);
            read_window(e, "speed_window", "experiment", cfg.experiment.speed_window, c);
            if (e.contains("initial_condition")) {
                try {
                    cfg.experiment.initial_condition = parse_ic(
                        e["initial_condition"].is_string() ? e["initial_condition"].get<std::string>() : "");
                } catch (const Error&) {
                    c.add("experiment.initial_condition", "must be step, wave, wave_plus_delta or custom_table");
                }
            }
            if (e.contains("custom_table")) {
                const auto& t = e["custom_table"];
                bool ok = t.is_array();
                if (ok) {
                    for (const auto& row : t) {
                        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
                            ok = false;
                            break;
                        }
                        cfg.experiment.custom_table.emplace_back(row[0].get<double>(), row[1].get<double>());
                    }
                }
                if (!ok) c.add("experiment.custom_table", "must be an array of [x, u] pairs");
                for (std::size_t i = 1; ok && i < cfg.experiment.custom_table.size(); ++i) {
                    if (!(cfg.experiment.custom_table[i].first > cfg.experiment.custom_table[i - 1].first)) {
                        c.add("experiment.custom_table", "x values must be strictly increasing");
                        break;
                    }
                }
            }
        }
    }
    const auto& ex = cfg.experiment;
    if (!(ex.t_end > 0.0)) c.add("experiment.t_end", "must be positive");
    if (!(ex.observe_every > 0.0)) c.add("experiment.observe_every", "must be positive");
    if (ex.delta < 0.0) c.add("experiment.delta", "must be >= 0 (0 selects the default)");
    if (ex.initial_condition == InitialCondition::custom_table && ex.custom_table.size() < 2)
        c.add("experiment.custom_table", "needs at least two rows for initial_condition custom_table");

    if (doc.contains("output")) {
        const auto& o = doc["output"];
        if (!o.is_object()) {
            c.add("output", "must be an object");
        } else {
            reject_unknown(o, "output", {"directory", "snapshot_times"}, c);
            if (o.contains("directory")) {
                if (o["directory"].is_string()) cfg.output.directory = o["directory"].get<std::string>();
                else c.add("output.directory", "must be a string");
            }
            if (o.contains("snapshot_times")) {
                if (!o["snapshot_times"].is_array()) {
                    c.add("output.snapshot_times", "must be an array of times");
                } else {
                    for (const auto& t : o["snapshot_times"]) {
                        if (!t.is_number() || t.get<double>() < 0.0) {
                            c.add("output.snapshot_times", "times must be non-negative numbers");
                            break;
                        }
                        cfg.output.snapshot_times.push_back(t.get<double>());
                    }
                }
            }
        }
    }

    if (!c.empty()) throw Error(ErrorKind::Config, c.joined());
    return cfg;
}

ojson to_json(const RunConfig& cfg) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["reaction"] = {{"name", cfg.reaction.name},
                     {"a", cfg.reaction.a},
                     {"f0", number_array(cfg.reaction.f0)},
                     {"f1", number_array(cfg.reaction.f1)},
                     {"branch_rule", to_string(cfg.reaction.branch_rule)}};
    j["solver"] = {{"eps", cfg.solver.eps},     {"rtol", cfg.solver.rtol},   {"tol_c", cfg.solver.tol_c},
                   {"dz", cfg.solver.dz},       {"u_eps", cfg.solver.u_eps}, {"u_eps_reference", cfg.solver.u_eps_reference}};
    j["grid"] = {{"x_min", cfg.grid.x_min},
                 {"x_max", cfg.grid.x_max},
                 {"dx", cfg.grid.dx},
                 {"dt", cfg.grid.dt},
                 {"bc", to_string(cfg.grid.bc)}};
    ojson table = ojson::array();
    for (const auto& [x, u] : cfg.experiment.custom_table) table.push_back(ojson::array({x, u}));
    j["experiment"] = {{"t_end", cfg.experiment.t_end},
                       {"observe_every", cfg.experiment.observe_every},
                       {"initial_condition", to_string(cfg.experiment.initial_condition)},
                       {"step_position", cfg.experiment.step_position},
                       {"delta", cfg.experiment.delta},
                       {"z0", cfg.experiment.z0},
                       {"window", ojson::array({cfg.experiment.window.first, cfg.experiment.window.second})},
                       {"speed_window",
                        ojson::array({cfg.experiment.speed_window.first, cfg.experiment.speed_window.second})},
                       {"custom_table", table}};
    j["output"] = {{"directory", cfg.output.directory}, {"snapshot_times", number_array(cfg.output.snapshot_times)}};
    return j;
}

}  // namespace bw
