#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bw/config.hpp"

namespace bw {

enum class Command { check, bounds, speed, profile, simulate, stability };

Command parse_command(const std::string& name);
std::string to_string(Command cmd);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation = 2;
inline constexpr int hypothesis = 3;
inline constexpr int solver = 4;
inline constexpr int divergence = 5;
}  // namespace exit_code

struct CommandResult {
    int exit_code = exit_code::ok;
    std::string status = "ok";  // "ok" or the failure kind
    std::string message;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::string> warnings;
};

/// Runs one subcommand and writes its artifacts into out_dir. Never throws
/// for solver/simulation failures; those come back as exit codes.
CommandResult run_command(Command cmd, const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Summary columns reported by `cmd` (fixed order, used for sweep tables).
std::vector<std::string> summary_keys(Command cmd);

struct SweepRow {
    double value;
    CommandResult result;
};

/// Sets the numeric leaf `field` (dot path into the normalised config) to each
/// value and runs `cmd` per row, concurrently up to `threads` rows at a time.
/// Row i writes into out_dir/sweep/row_<i>; the table goes to
/// out_dir/sweep.csv and out_dir/sweep.json. Rows keep input order.
std::vector<SweepRow> run_sweep(Command cmd, const RunConfig& base, const std::string& field,
                                const std::vector<double>& values, const std::filesystem::path& out_dir, int threads);

/// BW_THREADS if set and positive, else the OpenMP default.
int sweep_threads_from_env();

}  // namespace bw
