#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bw {

enum class ErrorKind {
    Domain,
    NonNegativeSlope,
    NoPositiveRoot,
    PathCollapse,
    BracketFailure,
    IntegrationFailure,
    DegenerateProfile,
    Divergence,
    NoFront,
    InsufficientData,
    NonPositiveDistance,
    Config,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `kind()` lets callers map failures to exit codes
/// or per-row status columns without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bw
