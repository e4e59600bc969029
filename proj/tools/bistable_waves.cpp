// bistable-waves: command-line front end.
//
//   bistable-waves <check|bounds|speed|profile|simulate|stability> --config <path>
//                  [--out <dir>] [--sweep <field>=v1,v2,...]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bw/commands.hpp"
#include "bw/error.hpp"

namespace {

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad sweep value '" + item + "'");
        values.push_back(v);
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traveling waves of bistable reaction-diffusion equations with a discontinuous nonlinearity"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    std::string sweep;
    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"check", "audit the hypotheses on the reaction term"},
        {"bounds", "slope bounds and the four matched envelope speeds"},
        {"speed", "wave speed c* by phase-plane shooting"},
        {"profile", "C1 wave profile (z,u,w) and phase-plane curves"},
        {"simulate", "evolve the PDE and track front and shift distance"},
        {"stability", "simulate and fit the exponential decay of the shift distance"},
    };
    for (const auto& [name, help] : subcommands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
        sub->add_option("--sweep", sweep, "sweep a numeric config leaf: field=v1,v2,...");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : bw::exit_code::validation;
    }

    try {
        const auto cmd = bw::parse_command(app.get_subcommands().front()->get_name());
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config " << config_path << "\n";
            return bw::exit_code::validation;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        const auto cfg = bw::parse_config(buf.str());
        const std::filesystem::path out = out_dir.empty() ? cfg.output.directory : out_dir;

        if (!sweep.empty()) {
            const auto eq = sweep.find('=');
            if (eq == std::string::npos) {
                std::cerr << "--sweep expects field=v1,v2,...\n";
                return bw::exit_code::validation;
            }
            const auto rows = bw::run_sweep(cmd, cfg, sweep.substr(0, eq), parse_values(sweep.substr(eq + 1)), out,
                                            bw::sweep_threads_from_env());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::cout << "row " << i << " value=" << rows[i].value << " status=" << rows[i].result.status << "\n";
            }
            std::cout << "wrote " << (out / "sweep.csv").string() << "\n";
            return bw::exit_code::ok;
        }

        const auto res = bw::run_command(cmd, cfg, out);
        for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& [k, v] : res.summary) std::cout << k << " = " << v << "\n";
        if (res.exit_code != bw::exit_code::ok) {
            if (res.message.rfind(res.status, 0) == 0) std::cerr << res.message << "\n";
            else std::cerr << res.status << ": " << res.message << "\n";
        }
        return res.exit_code;
    } catch (const bw::Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == bw::ErrorKind::Config ? bw::exit_code::validation : bw::exit_code::solver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bw::exit_code::validation;
    }
}
