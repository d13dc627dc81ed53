#include "hawkes/error.hpp"

namespace hawkes {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ExplosionRisk: return "ExplosionRisk";
        case ErrorCode::NonPositiveBase: return "NonPositiveBase";
        case ErrorCode::NegativeInput: return "NegativeInput";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
        case ErrorCode::CapacityExceeded: return "CapacityExceeded";
        case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularJacobian: return "SingularJacobian";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NegativeTimestamp: return "NegativeTimestamp";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace hawkes
