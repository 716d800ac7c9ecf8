#include "optocool/errors.hpp"

namespace optocool {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::ChirpWithoutDissipation: return "ChirpWithoutDissipation";
        case ErrorKind::NegativeOccupation: return "NegativeOccupation";
        case ErrorKind::Diverged: return "Diverged";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NoStationaryState: return "NoStationaryState";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::MissingKey: return "MissingKey";
        case ErrorKind::ConflictingDriveKeys: return "ConflictingDriveKeys";
    }
    return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Diverged:
        case ErrorKind::IllConditioned:
        case ErrorKind::NoConvergence:
        case ErrorKind::NoStationaryState:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace optocool
