// Error kinds raised by the optocool library and CLI

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optocool {

enum class ErrorKind {
    InvalidParameter,
    ChirpWithoutDissipation,
    NegativeOccupation,
    Diverged,
    IllConditioned,
    NoConvergence,
    NoStationaryState,
    ParseError,
    MissingKey,
    ConflictingDriveKeys,
};

// Stable name used on stderr and in sweep failure records.
std::string_view to_string(ErrorKind kind) noexcept;

// True for failures of the numerics (as opposed to bad input).
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return to_string(kind_); }

private:
    ErrorKind kind_;
};

}  // namespace optocool
