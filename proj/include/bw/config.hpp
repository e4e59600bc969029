#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bw/reaction.hpp"
#include "bw/simulator.hpp"

namespace bw {

using ojson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ReactionConfig {
    std::string name = "quadratic_demo";  // preset name or "custom"
    double a = 0.3;
    std::vector<double> f0{0.0, -1.0, -1.0};
    std::vector<double> f1{0.2, 0.8, -1.0};
    BranchRule branch_rule = BranchRule::right_closed;

    ReactionTerm term() const { return ReactionTerm(a, f0, f1, branch_rule); }
};

struct SolverConfig {
    double eps = 0.0;  // 0: 1e-6 min(a, 1-a) floored at 1e-8
    double rtol = 1e-10;
    double tol_c = 1e-10;
    double dz = 1e-2;
    double u_eps = 1e-4;            // profile export truncation
    double u_eps_reference = 1e-6;  // reference wave for shift distances
};

enum class InitialCondition { step, wave, wave_plus_delta, custom_table };

struct ExperimentConfig {
    double t_end = 40.0;
    double observe_every = 0.5;
    InitialCondition initial_condition = InitialCondition::step;
    double step_position = 0.0;
    double delta = 0.0;  // 0: half the admissible envelope amplitude
    double z0 = 0.0;
    std::pair<double, double> window{10.0, 40.0};
    std::pair<double, double> speed_window{20.0, 40.0};
    std::vector<std::pair<double, double>> custom_table;
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<double> snapshot_times;
};

struct RunConfig {
    ReactionConfig reaction;
    SolverConfig solver;
    Grid1D grid;
    ExperimentConfig experiment;
    OutputConfig output;
};

/// Parses a JSON configuration document, fills defaults and validates every
/// field. All problems are reported together in one ErrorKind::Config error,
/// one "field.path: message" per line.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const ojson& doc);
inline RunConfig parse_config(const char* text) { return parse_config(std::string(text)); }

/// Normalised form: every field present, reaction resolved to coefficients.
ojson to_json(const RunConfig& cfg);

/// Resolves "quadratic_demo" and "piecewise_linear(k,a)".
ReactionConfig reaction_preset(const std::string& name);

std::string to_string(InitialCondition ic);

}  // namespace bw
