#include "bw/json_out.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "bw/error.hpp"

namespace bw {

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump(const ojson& j, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string pad_close(2 * static_cast<std::size_t>(depth), ' ');
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (const auto& [key, val] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + ojson(key).dump() + ": ";
                dump(val, out, depth + 1);
            }
            out += "\n" + pad_close + "}";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            const bool flat = std::all_of(j.begin(), j.end(), [](const ojson& e) { return e.is_primitive(); });
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& val : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad;
                dump(val, out, depth + 1);
            }
            out += flat ? "]" : "\n" + pad_close + "]";
            return;
        }
        case ojson::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_number(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const ojson& j) {
    std::string out;
    dump(j, out, 0);
    out += "\n";
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorKind::Domain, "cannot write " + tmp.string());
        os << content;
        if (!os) throw Error(ErrorKind::Domain, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace bw
