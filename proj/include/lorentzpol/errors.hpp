#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorentzpol {

enum class ErrorCode {
    NormViolation,
    NonRealResult,
    SingularParameter,
    NonPositiveIntensity,
    NotRotationType,
    NotRotation,
    NearPiRotation,
    DegenerateTrace,
    SingularNormalization,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NormViolation: return "NormViolation";
        case ErrorCode::NonRealResult: return "NonRealResult";
        case ErrorCode::SingularParameter: return "SingularParameter";
        case ErrorCode::NonPositiveIntensity: return "NonPositiveIntensity";
        case ErrorCode::NotRotationType: return "NotRotationType";
        case ErrorCode::NotRotation: return "NotRotation";
        case ErrorCode::NearPiRotation: return "NearPiRotation";
        case ErrorCode::DegenerateTrace: return "DegenerateTrace";
        case ErrorCode::SingularNormalization: return "SingularNormalization";
    }
    return "Unknown";
}

/// Thrown by every operation in the library; code() identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lorentzpol
