#pragma once

#include <filesystem>
#include <string>

#include "bw/config.hpp"

namespace bw {

/// Deterministic JSON text: insertion-ordered keys, doubles printed with 17
/// significant digits, non-finite numbers as null, two-space indent.
std::string dump_json(const ojson& j);

/// "%.17g" formatting used by every CSV artifact.
std::string format_number(double v);

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bw
