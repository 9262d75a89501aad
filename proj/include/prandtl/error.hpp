#pragma once

#include <stdexcept>
#include <string>

namespace prandtl {

enum class ErrorCode {
    InvalidArgument,
    ConfigError,
    NoCriticalPoint,
    DegenerateCritical,
    QuadratureFailure,
    CurvatureVanished,
    TailBlowup,
    NoRootFound,
    ZeroMass,
    HorizonExceeded,
    CflViolation,
    NonFiniteState,
    WindowTooShort,
    InsufficientData,
    TailBelowFloor,
};

const char* error_name(ErrorCode code);

/// Typed failure raised by every module; the CLI maps it to an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace prandtl
