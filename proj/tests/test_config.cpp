#include <doctest.h>

#include <string>

#include "bw/config.hpp"
#include "bw/error.hpp"

using namespace bw;
using doctest::Approx;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        return e.what();
    }
    FAIL("expected a config error");
    return {};
}

}  // namespace

TEST_CASE("defaults") {
    const auto cfg = parse_config(R"j({"reaction": "quadratic_demo"})j");
    CHECK(cfg.reaction.a == 0.3);
    CHECK(cfg.grid.dx == 0.05);
    CHECK(cfg.grid.dt == Approx(0.01));
    CHECK(cfg.grid.x_min == -60.0);
    CHECK(cfg.grid.bc == BoundaryCondition::dirichlet01);
    CHECK(cfg.experiment.t_end == 40.0);
    CHECK(cfg.experiment.initial_condition == InitialCondition::step);
    CHECK(cfg.experiment.window == std::pair{10.0, 40.0});
    CHECK(cfg.output.directory == "out");
    CHECK(parse_config("{}").reaction.name == "quadratic_demo");
}

TEST_CASE("presets") {
    const auto pl = reaction_preset("piecewise_linear(-1, 0.3)");
    CHECK(pl.a == 0.3);
    CHECK(pl.f0 == std::vector<double>{0.0, -1.0});
    CHECK(pl.f1 == std::vector<double>{1.0, -1.0});
    CHECK(reaction_preset("quadratic_demo").f1 == std::vector<double>{0.2, 0.8, -1.0});
    CHECK_THROWS_AS(reaction_preset("cubic"), Error);
    CHECK(parse_config(R"j({"reaction": {"preset": "piecewise_linear(-2,0.4)"}})j").reaction.f0[1] == -2.0);
}

TEST_CASE("inline reaction") {
    const auto cfg = parse_config(
        R"j({"reaction": {"a": 0.4, "f0": [0, -1], "f1": [0.6, -0.6], "branch_rule": "left_closed"}})j");
    CHECK(cfg.reaction.name == "custom");
    CHECK(cfg.reaction.a == 0.4);
    CHECK(cfg.reaction.branch_rule == BranchRule::left_closed);
    CHECK(cfg.reaction.term().eval(0.4) == Approx(-0.4));
}

TEST_CASE("unknown preset names the field") {
    const auto msg = config_error(R"j({"reaction": "cubic_demo"})j");
    CHECK(msg.find("reaction") != std::string::npos);
    CHECK(msg.find("cubic_demo") != std::string::npos);
}

TEST_CASE("dt above the stability bound") {
    const auto msg = config_error(R"j({"grid": {"dt": 2.0}})j");
    CHECK(msg.find("grid.dt") != std::string::npos);
    CHECK(msg.find("dt_stability") != std::string::npos);
}

TEST_CASE("all problems are reported together") {
    const auto msg = config_error(
        R"j({"bogus": 1, "grid": {"dx": -1, "bc": "periodic"}, "experiment": {"initial_condition": "spike", "window": [5, 1]}, "solver": {"tol_c": "tight"}})j");
    for (const char* field : {"config.bogus", "grid.dx", "grid.bc", "experiment.initial_condition", "experiment.window",
                              "solver.tol_c"}) {
        CHECK_MESSAGE(msg.find(field) != std::string::npos, field);
    }
}

TEST_CASE("malformed JSON") {
    const auto msg = config_error("{ not json");
    CHECK_FALSE(msg.empty());
}

TEST_CASE("round trip on the normalised form") {
    const auto cfg = parse_config(
        R"j({"reaction": "piecewise_linear(-1,0.3)", "grid": {"x_min": -30, "x_max": 30, "dx": 0.1, "bc": "neumann"},
            "experiment": {"t_end": 12, "initial_condition": "wave_plus_delta", "delta": 0.001, "window": [2, 12], "speed_window": [4, 12]},
            "output": {"directory": "somewhere", "snapshot_times": [0, 5]}})j");
    const auto j = to_json(cfg);
    CHECK(j["schema_version"] == kSchemaVersion);
    const auto again = parse_config(j);
    CHECK(to_json(again).dump() == j.dump());
    CHECK(again.grid.bc == BoundaryCondition::neumann);
    CHECK(again.output.snapshot_times == std::vector<double>{0.0, 5.0});
    CHECK(to_json(parse_config(j.dump())).dump() == j.dump());
}
