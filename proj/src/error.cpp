#include "prandtl/error.hpp"

namespace prandtl {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::NoCriticalPoint: return "NoCriticalPoint";
    case ErrorCode::DegenerateCritical: return "DegenerateCritical";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::CurvatureVanished: return "CurvatureVanished";
    case ErrorCode::TailBlowup: return "TailBlowup";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::TailBelowFloor: return "TailBelowFloor";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace prandtl
