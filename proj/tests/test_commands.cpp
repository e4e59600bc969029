#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bw/commands.hpp"
#include "bw/config.hpp"

using namespace bw;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("bw_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson read_json(const fs::path& p) { return ojson::parse(slurp(p)); }

}  // namespace

TEST_CASE("command names") {
    CHECK(parse_command("stability") == Command::stability);
    CHECK(to_string(Command::bounds) == "bounds");
    CHECK_THROWS(parse_command("plot"));
}

TEST_CASE("check on the demo term") {
    const auto out = scratch("check_demo");
    const auto res = run_command(Command::check, parse_config(R"j({"reaction": "quadratic_demo"})j"), out);
    CHECK(res.exit_code == exit_code::ok);
    const auto j = read_json(out / "check.json");
    CHECK(j["report"]["h3_integral"].get<double>() == Approx(0.125666666666667).epsilon(1e-12));
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["config"]["reaction"]["a"] == 0.3);
}

TEST_CASE("check on the symmetric term fails H3") {
    const auto res = run_command(Command::check, parse_config(R"j({"reaction": "piecewise_linear(-1,0.5)"})j"),
                                 scratch("check_sym"));
    CHECK(res.exit_code == exit_code::hypothesis);
}

TEST_CASE("hypothesis failure gates the solver commands") {
    const auto cfg = parse_config(R"j({"reaction": {"a": 0.5, "f0": [0, -1, 3], "f1": [0.5, -0.5]}})j");
    CHECK(run_command(Command::speed, cfg, scratch("gate")).exit_code == exit_code::hypothesis);
}

TEST_CASE("speed on a linear term") {
    const auto out = scratch("speed_lin");
    const auto res = run_command(Command::speed, parse_config(R"j({"reaction": "piecewise_linear(-1,0.3)"})j"), out);
    CHECK(res.exit_code == exit_code::ok);
    const auto j = read_json(out / "speed.json");
    CHECK(std::abs(j["c_star"].get<double>() - 0.8728715609439696) <= 1e-8);
    CHECK(j.contains("bracket"));
    CHECK(j.contains("derivative_jump"));
    CHECK(j.contains("iterations"));
    CHECK(j["warnings"].empty());
}

TEST_CASE("bounds artifacts") {
    const auto out = scratch("bounds");
    CHECK(run_command(Command::bounds, parse_config("{}"), out).exit_code == exit_code::ok);
    const auto j = read_json(out / "bounds.json");
    CHECK(j["bracket"]["c_check"].get<double>() == Approx(0.3247016252).epsilon(1e-8));
    CHECK(j["bracket"]["ordering_ok"] == true);
    const auto csv = slurp(out / "bounds.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.rfind("c_check,", 0) == 0);
}

TEST_CASE("profile artifacts") {
    const auto out = scratch("profile");
    CHECK(run_command(Command::profile, parse_config("{}"), out).exit_code == exit_code::ok);
    std::ifstream in(out / "profile.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "z,u,w");
    const auto phase = slurp(out / "phase_plane.csv");
    for (const char* curve : {"zero", "c_check", "c_hat", "c_under", "c_over", "c_star"})
        CHECK_MESSAGE(phase.find(curve) != std::string::npos, curve);
}

TEST_CASE("simulation divergence exits with 5") {
    // a spike above the guard in the initial table
    const auto cfg = parse_config(R"j({"experiment": {"t_end": 1, "initial_condition": "custom_table",
        "custom_table": [[-60, 0], [-0.05, 0], [0, 3.0], [0.05, 0], [60, 0]], "window": [0.1, 1], "speed_window": [0.1, 1]},
        "reaction": {"a": 0.3, "f0": [0, -1], "f1": [0.7, -0.7]}, "grid": {"dx": 0.05, "dt": 0.01}})j");
    const auto res = run_command(Command::simulate, cfg, scratch("diverge"));
    CHECK(res.exit_code == exit_code::divergence);
    CHECK(res.status == "Divergence");
}

TEST_CASE("artifacts are byte identical across runs") {
    const auto cfg = parse_config(R"j({"reaction": "quadratic_demo", "experiment": {"t_end": 4, "window": [1, 4], "speed_window": [1, 4]},
                                      "grid": {"x_min": -30, "x_max": 30}})j");
    for (auto cmd : {Command::check, Command::bounds, Command::speed, Command::profile, Command::stability}) {
        const auto a = scratch("det_a"), b = scratch("det_b");
        run_command(cmd, cfg, a);
        run_command(cmd, cfg, b);
        for (const auto& e : fs::directory_iterator(a)) {
            CHECK_MESSAGE(slurp(e.path()) == slurp(b / e.path().filename()), e.path().filename().string());
        }
        CHECK(std::distance(fs::directory_iterator(a), fs::directory_iterator{}) > 0);
    }
}

TEST_CASE("sweep over the branch point") {
    const auto out = scratch("sweep");
    const auto base = parse_config(R"j({"reaction": "piecewise_linear(-1,0.3)"})j");
    const std::vector<double> values{0.1, 0.2, 0.3, 0.4, 0.45, 0.5};
    const auto rows = run_sweep(Command::speed, base, "reaction.a", values, out, 3);
    REQUIRE(rows.size() == values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].value == values[i]);
        if (values[i] == 0.5) {
            CHECK(rows[i].result.status == "NoPositiveRoot");
            continue;
        }
        CHECK(rows[i].result.exit_code == exit_code::ok);
        double c = NAN;
        for (const auto& [k, v] : rows[i].result.summary)
            if (k == "c_star") c = v;
        const double a = values[i];
        CHECK(std::abs(c - (1 - 2 * a) / std::sqrt(a * (1 - a))) <= 1e-6);
    }
    const auto csv = slurp(out / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    CHECK(read_json(out / "sweep.json")["rows"].size() == 6);
}

TEST_CASE("empty sweep") {
    const auto out = scratch("sweep_empty");
    const auto rows = run_sweep(Command::speed, parse_config("{}"), "reaction.a", {}, out, 2);
    CHECK(rows.empty());
    const auto csv = slurp(out / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

TEST_CASE("sweep rejects a non-numeric field") {
    CHECK_THROWS(run_sweep(Command::speed, parse_config("{}"), "grid.bc", {1.0}, scratch("sweep_bad"), 1));
    CHECK_THROWS(run_sweep(Command::speed, parse_config("{}"), "grid.nothing", {1.0}, scratch("sweep_bad"), 1));
}
