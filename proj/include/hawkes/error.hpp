#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hawkes {

enum class ErrorCode {
    ExplosionRisk,
    NonPositiveBase,
    NegativeInput,
    InvalidArgument,
    ToleranceNotMet,
    CapacityExceeded,
    WindowOutOfRange,
    InsufficientData,
    NoConvergence,
    SingularJacobian,
    ParseError,
    NegativeTimestamp,
    EmptyFile,
    IoError,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

class HawkesError : public std::runtime_error {
public:
    HawkesError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hawkes
