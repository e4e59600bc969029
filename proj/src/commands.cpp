#include "bw/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "bw/error.hpp"
#include "bw/json_out.hpp"
#include "bw/linear_theory.hpp"
#include "bw/profile.hpp"
#include "bw/shooting.hpp"
#include "bw/simulator.hpp"

namespace bw {

namespace fs = std::filesystem;

Command parse_command(const std::string& name) {
    if (name == "check") return Command::check;
    if (name == "bounds") return Command::bounds;
    if (name == "speed") return Command::speed;
    if (name == "profile") return Command::profile;
    if (name == "simulate") return Command::simulate;
    if (name == "stability") return Command::stability;
    throw Error(ErrorKind::Config, "unknown subcommand '" + name + "'");
}

std::string to_string(Command cmd) {
    switch (cmd) {
        case Command::check: return "check";
        case Command::bounds: return "bounds";
        case Command::speed: return "speed";
        case Command::profile: return "profile";
        case Command::simulate: return "simulate";
        case Command::stability: return "stability";
    }
    return "check";
}

std::vector<std::string> summary_keys(Command cmd) {
    switch (cmd) {
        case Command::check: return {"h3_integral", "remark2_ok"};
        case Command::bounds: return {"c_check", "c_under", "c_over", "c_hat", "ordering_ok"};
        case Command::speed: return {"c_star", "c_check", "c_hat", "derivative_jump"};
        case Command::profile: return {"c_star", "derivative_jump", "samples"};
        case Command::simulate: return {"c_star", "speed", "final_shift_distance"};
        case Command::stability: return {"kappa", "K", "r2", "speed", "speed_error_vs_cstar"};
    }
    return {};
}

namespace {

struct HypothesisFailure {
    std::string what;
};

ojson envelope_header(Command cmd, const RunConfig& cfg) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = to_string(cmd);
    j["config"] = to_json(cfg);
    return j;
}

ojson bracket_json(const SpeedBracket& b) {
    ojson j = {{"c_check", b.c_check},
               {"c_under", b.c_under},
               {"c_over", b.c_over},
               {"c_hat", b.c_hat},
               {"ordering_ok", b.ordering_ok}};
    if (!b.failed.empty()) j["failed"] = b.failed;
    return j;
}

ShootOptions shoot_options(const RunConfig& cfg) {
    ShootOptions so;
    so.eps = cfg.solver.eps;
    so.ode.rtol = cfg.solver.rtol;
    return so;
}

HypothesisReport gate_hypotheses(const ReactionTerm& f) {
    auto rep = check_hypotheses(f);
    if (!rep.h1_ok || !rep.h2_ok || !rep.slopes_ok) {
        std::string what = "reaction term fails";
        if (!rep.h1_ok) what += " H1";
        if (!rep.h2_ok) what += " H2";
        if (!rep.slopes_ok) what += " (slope bounds)";
        throw HypothesisFailure{what};
    }
    return rep;
}

struct Solved {
    HypothesisReport report;
    SpeedBracket bracket;
    SpeedResult speed;
};

Solved solve_speed(const RunConfig& cfg, const ReactionTerm& f) {
    Solved s;
    s.report = gate_hypotheses(f);
    s.bracket = speed_bracket(s.report.slope_bounds, f.a());
    s.speed = find_speed(f, s.bracket, cfg.solver.tol_c, shoot_options(cfg));
    return s;
}

WaveSolution solve_profile(const RunConfig& cfg, const ReactionTerm& f, const Solved& s, double u_eps) {
    ProfileOptions po;
    po.u_eps = u_eps;
    po.dz = cfg.solver.dz;
    po.shoot = shoot_options(cfg);
    po.shoot.eps = 0.0;
    auto ws = reconstruct_profile(f, s.speed.c_star, po);
    ws.bracket = s.bracket;
    return ws;
}

std::string csv_row(std::initializer_list<double> values) {
    std::string s;
    for (double v : values) s += (s.empty() ? "" : ",") + format_number(v);
    return s + "\n";
}

double interp_table(const std::vector<std::pair<double, double>>& t, double x) {
    if (x <= t.front().first) return t.front().second;
    if (x >= t.back().first) return t.back().second;
    auto it = std::upper_bound(t.begin(), t.end(), x, [](double v, const auto& p) { return v < p.first; });
    const auto& [x1, u1] = *it;
    const auto& [x0, u0] = *(it - 1);
    return u0 + (u1 - u0) * (x - x0) / (x1 - x0);
}

std::vector<double> initial_data(const RunConfig& cfg, const ProfileInterpolant& wave, double delta) {
    const auto& g = cfg.grid;
    const auto& ex = cfg.experiment;
    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = g.x(i);
        switch (ex.initial_condition) {
            case InitialCondition::step: u[i] = x >= ex.step_position ? 1.0 : 0.0; break;
            case InitialCondition::wave: u[i] = wave.value(x + ex.z0); break;
            case InitialCondition::wave_plus_delta: u[i] = wave.value(x + ex.z0) + delta; break;
            case InitialCondition::custom_table: u[i] = interp_table(ex.custom_table, x); break;
        }
    }
    return u;
}

std::string trajectory_csv(const Trajectory& tr) {
    std::string s = "t,front_position,shift_distance,z_best\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        s += csv_row({tr.times[i], tr.front_positions[i], tr.shift_distances[i], tr.best_shifts[i]});
    return s;
}

void write_snapshots(const Trajectory& tr, const Grid1D& g, const fs::path& out) {
    for (const auto& snap : tr.snapshots) {
        std::string s = "x,u\n";
        for (std::size_t i = 0; i < snap.u.size(); ++i) s += csv_row({g.x(i), snap.u[i]});
        write_file_atomic(out / ("snapshot_t" + format_number(snap.t) + ".csv"), s);
    }
}

struct SimulationRun {
    Solved solved;
    WaveSolution ws;
    SuperSubParams params;
    double delta;
    Trajectory tr;
    std::vector<std::string> warnings;
    std::optional<EnvelopeReport> envelope;
};

SimulationRun simulate(const RunConfig& cfg, const ReactionTerm& f, bool with_envelope) {
    SimulationRun r;
    r.solved = solve_speed(cfg, f);
    r.ws = solve_profile(cfg, f, r.solved, cfg.solver.u_eps_reference);
    const ProfileInterpolant wave(r.ws);
    r.params = supersub_params(r.ws, f, select_M(r.ws), default_rho(f));
    r.delta = cfg.experiment.delta > 0.0 ? cfg.experiment.delta : 0.5 * max_envelope_delta(r.params, f.a());

    const double c = r.solved.speed.c_star;
    const double reach = c * cfg.experiment.t_end + 10.0;
    if (-cfg.grid.x_min < reach) {
        std::ostringstream os;
        os << "front travels towards -x; x_min=" << cfg.grid.x_min << " is within c*·t_end+10=" << reach
           << " of the origin";
        r.warnings.push_back(os.str());
    }
    auto u0 = initial_data(cfg, wave, r.delta);
    RunOptions ro;
    ro.reference = &wave;
    ro.snapshot_times = cfg.output.snapshot_times;
    r.tr = run(f, u0, cfg.grid, cfg.experiment.t_end, cfg.experiment.observe_every, ro);
    r.warnings.insert(r.warnings.end(), r.tr.diagnostics.begin(), r.tr.diagnostics.end());

    const auto ic = cfg.experiment.initial_condition;
    if (with_envelope && (ic == InitialCondition::wave || ic == InitialCondition::wave_plus_delta)) {
        const double band = std::max(r.delta, 0.0);
        if (band > 0.0 && band <= max_envelope_delta(r.params, f.a())) {
            r.envelope = envelope_check(f, wave, r.params, u0, cfg.grid, cfg.experiment.t_end, cfg.experiment.z0, band);
        }
    }
    return r;
}

ojson params_json(const SuperSubParams& p) {
    return {{"gamma", p.gamma}, {"sigma", p.sigma}, {"delta0", p.delta0}, {"K0", p.K0},       {"K1", p.K1},
            {"K2_sep", p.K2_sep}, {"eps_star", p.eps_star}, {"M", p.M}, {"rho", p.rho}};
}

ojson string_array(const std::vector<std::string>& v) {
    ojson a = ojson::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

// Phase-plane curves for the figure panels: nonlinear shooting paths and the
// linear envelope paths w = lambda0+ u, w = lambda1- (u - 1).
std::string phase_plane_csv(const ReactionTerm& f, const Solved& s, const ShootOptions& so) {
    const auto& b = s.report.slope_bounds;
    const auto& br = s.bracket;
    const std::vector<std::pair<std::string, double>> speeds = {
        {"zero", 0.0},          {"c_check", br.c_check}, {"c_hat", br.c_hat},
        {"c_under", br.c_under}, {"c_over", br.c_over},   {"c_star", s.speed.c_star}};
    const double a = f.a();
    std::string out = "panel,c,curve,u,w\n";
    auto row = [&](const std::string& panel, double c, const char* curve, double u, double w) {
        out += panel + "," + format_number(c) + "," + curve + "," + format_number(u) + "," + format_number(w) + "\n";
    };
    for (const auto& [panel, c] : speeds) {
        try {
            for (const auto& p : shoot_half(f, Side::left, c, so).samples) row(panel, c, "w_minus", p.u, p.w);
        } catch (const Error&) {
        }
        try {
            for (const auto& p : shoot_half(f, Side::right, c, so).samples) row(panel, c, "w_plus", p.u, p.w);
        } catch (const Error&) {
        }
        for (int k = 0; k <= 20; ++k) {
            const double u = a * k / 20.0;
            row(panel, c, "env_alpha_lo", u, lambda_plus(c, b.alpha_lo) * u);
            row(panel, c, "env_alpha_hi", u, lambda_plus(c, b.alpha_hi) * u);
        }
        for (int k = 0; k <= 20; ++k) {
            const double u = a + (1.0 - a) * k / 20.0;
            row(panel, c, "env_beta_lo", u, lambda_minus(c, b.beta_lo) * (u - 1.0));
            row(panel, c, "env_beta_hi", u, lambda_minus(c, b.beta_hi) * (u - 1.0));
        }
    }
    return out;
}

CommandResult execute(Command cmd, const RunConfig& cfg, const fs::path& out) {
    CommandResult res;
    const auto f = cfg.reaction.term();
    auto header = envelope_header(cmd, cfg);

    switch (cmd) {
        case Command::check: {
            const auto rep = check_hypotheses(f);
            ojson viol = ojson::array();
            for (const auto& v : rep.violations)
                viol.push_back({{"hypothesis", v.hypothesis}, {"u", v.u}, {"value", v.value}});
            ojson r = {{"h1_ok", rep.h1_ok},   {"h2_ok", rep.h2_ok},         {"h3_ok", rep.h3_ok},
                       {"h3_integral", rep.h3_integral}, {"remark2_ok", rep.remark2_ok}};
            if (rep.slopes_ok) {
                const auto& b = rep.slope_bounds;
                r["slope_bounds"] = {{"alpha_lo", b.alpha_lo},
                                     {"alpha_hi", b.alpha_hi},
                                     {"beta_lo", b.beta_lo},
                                     {"beta_hi", b.beta_hi}};
            } else {
                r["slope_bounds"] = nullptr;
            }
            r["violations"] = viol;
            header["report"] = r;
            write_file_atomic(out / "check.json", dump_json(header));
            res.summary = {{"h3_integral", rep.h3_integral}, {"remark2_ok", rep.remark2_ok ? 1.0 : 0.0}};
            if (!rep.all_ok()) {
                res.exit_code = exit_code::hypothesis;
                res.status = "HypothesisFailure";
                res.message = std::string("hypotheses violated:") + (rep.h1_ok ? "" : " H1") +
                              (rep.h2_ok ? "" : " H2") + (rep.h3_ok ? "" : " H3");
            }
            return res;
        }
        case Command::bounds: {
            const auto rep = gate_hypotheses(f);
            const auto br = speed_bracket(rep.slope_bounds, f.a());
            const auto& b = rep.slope_bounds;
            header["slope_bounds"] = {
                {"alpha_lo", b.alpha_lo}, {"alpha_hi", b.alpha_hi}, {"beta_lo", b.beta_lo}, {"beta_hi", b.beta_hi}};
            header["bracket"] = bracket_json(br);
            write_file_atomic(out / "bounds.json", dump_json(header));
            write_file_atomic(out / "bounds.csv", "c_check,c_under,c_over,c_hat,ordering_ok\n" +
                                                      format_number(br.c_check) + "," + format_number(br.c_under) +
                                                      "," + format_number(br.c_over) + "," +
                                                      format_number(br.c_hat) + "," +
                                                      (br.ordering_ok ? "true" : "false") + "\n");
            res.summary = {{"c_check", br.c_check},
                           {"c_under", br.c_under},
                           {"c_over", br.c_over},
                           {"c_hat", br.c_hat},
                           {"ordering_ok", br.ordering_ok ? 1.0 : 0.0}};
            if (!br.failed.empty()) {
                res.exit_code = exit_code::solver;
                res.status = std::string(to_string(ErrorKind::NoPositiveRoot));
                res.message = "no positive matched speed for " + br.failed;
            }
            return res;
        }
        case Command::speed: {
            const auto s = solve_speed(cfg, f);
            const auto left = shoot_half(f, Side::left, s.speed.c_star, shoot_options(cfg));
            double w_plus = 0.0;
            try {
                w_plus = shoot_half(f, Side::right, s.speed.c_star, shoot_options(cfg)).w_at_a();
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::PathCollapse) throw;
            }
            const double jump = std::abs(left.w_at_a() - w_plus);
            header["c_star"] = s.speed.c_star;
            header["bracket"] = bracket_json(s.bracket);
            header["derivative_jump"] = jump;
            header["iterations"] = s.speed.iterations;
            header["residual"] = s.speed.residual;
            header["monotone_ok"] = s.speed.monotone_ok;
            header["warnings"] = string_array(s.speed.warnings);
            write_file_atomic(out / "speed.json", dump_json(header));
            res.summary = {{"c_star", s.speed.c_star},
                           {"c_check", s.bracket.c_check},
                           {"c_hat", s.bracket.c_hat},
                           {"derivative_jump", jump}};
            res.warnings = s.speed.warnings;
            return res;
        }
        case Command::profile: {
            const auto s = solve_speed(cfg, f);
            const auto ws = solve_profile(cfg, f, s, cfg.solver.u_eps);
            std::string csv = "z,u,w\n";
            for (std::size_t i = 0; i < ws.z_grid.size(); ++i)
                csv += csv_row({ws.z_grid[i], ws.u_values[i], ws.w_values[i]});
            write_file_atomic(out / "profile.csv", csv);
            write_file_atomic(out / "phase_plane.csv", phase_plane_csv(f, s, shoot_options(cfg)));
            header["c_star"] = ws.c_star;
            header["bracket"] = bracket_json(s.bracket);
            header["derivative_jump"] = ws.derivative_jump_at_0;
            header["c1_ok"] = verify_c1(ws, 1e-6);
            header["samples"] = ws.z_grid.size();
            header["z_range"] = ojson::array({ws.z_grid.front(), ws.z_grid.back()});
            header["tail_rates"] = {{"left", ws.rate_left}, {"right", ws.rate_right}};
            write_file_atomic(out / "profile.json", dump_json(header));
            res.summary = {{"c_star", ws.c_star},
                           {"derivative_jump", ws.derivative_jump_at_0},
                           {"samples", static_cast<double>(ws.z_grid.size())}};
            return res;
        }
        case Command::simulate: {
            auto r = simulate(cfg, f, false);
            write_file_atomic(out / "trajectory.csv", trajectory_csv(r.tr));
            write_snapshots(r.tr, cfg.grid, out);
            std::optional<SpeedEstimate> sp;
            try {
                sp = estimate_speed(r.tr, cfg.experiment.speed_window);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::InsufficientData) throw;
                r.warnings.push_back(e.what());
            }
            header["c_star"] = r.solved.speed.c_star;
            header["speed"] = sp ? ojson(-sp->speed) : ojson(nullptr);
            header["front_slope"] = sp ? ojson(sp->speed) : ojson(nullptr);
            header["speed_r2"] = sp ? ojson(sp->r2) : ojson(nullptr);
            header["speed_window"] = ojson::array({cfg.experiment.speed_window.first, cfg.experiment.speed_window.second});
            header["final_shift_distance"] = r.tr.shift_distances.back();
            header["warnings"] = string_array(r.warnings);
            write_file_atomic(out / "simulate.json", dump_json(header));
            res.summary = {{"c_star", r.solved.speed.c_star},
                           {"speed", sp ? -sp->speed : std::nan("")},
                           {"final_shift_distance", r.tr.shift_distances.back()}};
            res.warnings = r.warnings;
            return res;
        }
        case Command::stability: {
            auto r = simulate(cfg, f, true);
            write_file_atomic(out / "trajectory.csv", trajectory_csv(r.tr));
            write_snapshots(r.tr, cfg.grid, out);
            const auto& win = cfg.experiment.window;
            const auto fit = fit_decay(r.tr, win);
            const auto sp = estimate_speed(r.tr, cfg.experiment.speed_window);
            const double c = r.solved.speed.c_star;
            const double speed = -sp.speed;

            double max_increase = 0.0;
            std::vector<double> in_window;
            for (std::size_t i = 1; i < r.tr.times.size(); ++i) {
                if (r.tr.times[i - 1] >= win.first - 1e-12 && r.tr.times[i] <= win.second + 1e-12)
                    max_increase = std::max(max_increase, r.tr.shift_distances[i] - r.tr.shift_distances[i - 1]);
            }
            for (std::size_t i = 0; i < r.tr.times.size(); ++i)
                if (r.tr.times[i] >= win.first - 1e-12 && r.tr.times[i] <= win.second + 1e-12)
                    in_window.push_back(r.tr.shift_distances[i]);
            std::sort(in_window.begin(), in_window.end());
            const double floor = in_window.empty() ? std::nan("") : in_window[in_window.size() / 2];

            // Decay before the distance reaches the discretisation floor.
            ojson transient = nullptr;
            {
                std::vector<double> t, logd;
                for (std::size_t i = 0; i < r.tr.times.size(); ++i) {
                    if (r.tr.times[i] < 1.0) continue;
                    if (!(r.tr.shift_distances[i] > 4.0 * floor)) break;
                    t.push_back(r.tr.times[i]);
                    logd.push_back(std::log(r.tr.shift_distances[i]));
                }
                if (t.size() >= 3) {
                    const auto lf = least_squares(t, logd);
                    transient = {{"window", ojson::array({t.front(), t.back()})},
                                 {"kappa", 0.0 - lf.slope},
                                 {"K", std::exp(lf.intercept)},
                                 {"r2", lf.r2}};
                }
            }

            header["kappa"] = fit.kappa;
            header["K"] = fit.K;
            header["r2"] = fit.r2;
            header["window"] = ojson::array({win.first, win.second});
            header["speed"] = speed;
            header["speed_error_vs_cstar"] = (speed - c) / c;
            header["c_star"] = c;
            header["front_slope"] = sp.speed;
            header["speed_r2"] = sp.r2;
            header["max_distance_increase_in_window"] = max_increase;
            header["distance_floor"] = floor;
            header["transient_fit"] = transient;
            header["supersub"] = params_json(r.params);
            header["delta"] = r.delta;
            if (r.envelope) {
                const auto& e = *r.envelope;
                header["envelope_check"] = {{"max_above_upper", e.max_above_upper}, {"x_upper", e.x_upper},
                                            {"t_upper", e.t_upper},                 {"max_below_lower", e.max_below_lower},
                                            {"x_lower", e.x_lower},                 {"t_lower", e.t_lower}};
            } else {
                header["envelope_check"] = nullptr;
            }
            header["warnings"] = string_array(r.warnings);
            write_file_atomic(out / "stability.json", dump_json(header));
            res.summary = {{"kappa", fit.kappa},
                           {"K", fit.K},
                           {"r2", fit.r2},
                           {"speed", speed},
                           {"speed_error_vs_cstar", (speed - c) / c}};
            res.warnings = r.warnings;
            return res;
        }
    }
    return res;
}

}  // namespace

CommandResult run_command(Command cmd, const RunConfig& cfg, const fs::path& out_dir) {
    try {
        fs::create_directories(out_dir);
        return execute(cmd, cfg, out_dir);
    } catch (const HypothesisFailure& h) {
        return {exit_code::hypothesis, "HypothesisFailure", h.what, {}, {}};
    } catch (const Error& e) {
        CommandResult r;
        r.status = std::string(to_string(e.kind()));
        r.message = e.what();
        switch (e.kind()) {
            case ErrorKind::Config: r.exit_code = exit_code::validation; break;
            case ErrorKind::Divergence: r.exit_code = exit_code::divergence; break;
            default: r.exit_code = exit_code::solver; break;
        }
        return r;
    } catch (const fs::filesystem_error& e) {
        return {exit_code::validation, "IOError", e.what(), {}, {}};
    }
}

int sweep_threads_from_env() {
    if (const char* env = std::getenv("BW_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
}

std::vector<SweepRow> run_sweep(Command cmd, const RunConfig& base, const std::string& field,
                                const std::vector<double>& values, const fs::path& out_dir, int threads) {
    const ojson normalized = to_json(base);
    std::string pointer;
    for (std::size_t pos = 0; pos <= field.size();) {
        const auto next = std::min(field.find('.', pos), field.size());
        pointer += "/" + field.substr(pos, next - pos);
        pos = next + 1;
    }
    const ojson::json_pointer ptr(pointer);
    if (!normalized.contains(ptr) || !normalized.at(ptr).is_number()) {
        throw Error(ErrorKind::Config, "sweep field '" + field + "' is not a numeric config leaf");
    }

    std::vector<SweepRow> rows(values.size());
    const fs::path sweep_dir = out_dir / "sweep";
    fs::create_directories(sweep_dir);
    const long n = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, threads))
    for (long i = 0; i < n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        row.value = values[static_cast<std::size_t>(i)];
        const fs::path final_dir = sweep_dir / ("row_" + std::to_string(i));
        fs::path tmp_dir = final_dir;
        tmp_dir += ".tmp";
        try {
            ojson doc = normalized;
            doc[ptr] = row.value;
            if (field.rfind("reaction.", 0) == 0) doc["reaction"]["name"] = "custom";
            const auto cfg = parse_config(doc);
            fs::remove_all(tmp_dir);
            row.result = run_command(cmd, cfg, tmp_dir);
            fs::remove_all(final_dir);
            fs::rename(tmp_dir, final_dir);
        } catch (const Error& e) {
            row.result = {e.kind() == ErrorKind::Config ? exit_code::validation : exit_code::solver,
                          std::string(to_string(e.kind())), e.what(), {}, {}};
        } catch (const std::exception& e) {
            row.result = {exit_code::solver, "Error", e.what(), {}, {}};
        }
    }

    const auto keys = summary_keys(cmd);
    std::string csv = "index," + field + ",status,exit_code";
    for (const auto& k : keys) csv += "," + k;
    csv += "\n";
    ojson table = ojson::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        csv += std::to_string(i) + "," + format_number(r.value) + "," + r.result.status + "," +
               std::to_string(r.result.exit_code);
        ojson jr = {{"index", i}, {"value", r.value}, {"status", r.result.status}, {"exit_code", r.result.exit_code}};
        for (const auto& k : keys) {
            auto it = std::find_if(r.result.summary.begin(), r.result.summary.end(),
                                   [&](const auto& p) { return p.first == k; });
            csv += ",";
            if (it != r.result.summary.end()) {
                csv += format_number(it->second);
                jr[k] = it->second;
            } else {
                jr[k] = nullptr;
            }
        }
        csv += "\n";
        if (!r.result.message.empty()) jr["message"] = r.result.message;
        table.push_back(jr);
    }
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = to_string(cmd);
    doc["config"] = normalized;
    doc["sweep_field"] = field;
    doc["rows"] = table;
    write_file_atomic(out_dir / "sweep.csv", csv);
    write_file_atomic(out_dir / "sweep.json", dump_json(doc));
    return rows;
}

}  // namespace bw
