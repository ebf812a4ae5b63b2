#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace buildings {

enum class ErrorCode {
    ZeroVector,
    InvalidType,
    OrbitTooLarge,
    AntipodalPair,
    NotRankOne,
    EquilateralViolation,
    CombingMismatch,
    ImpossibleConfiguration,
    FoldMismatch,
    NoTemplateMatch,
    WrongLine,
    WrongCorner,
    UnknownPoint,
    BadTemplateParams,
    ParseError,
    Overflow,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::OrbitTooLarge: return "OrbitTooLarge";
    case ErrorCode::AntipodalPair: return "AntipodalPair";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::EquilateralViolation: return "EquilateralViolation";
    case ErrorCode::CombingMismatch: return "CombingMismatch";
    case ErrorCode::ImpossibleConfiguration: return "ImpossibleConfiguration";
    case ErrorCode::FoldMismatch: return "FoldMismatch";
    case ErrorCode::NoTemplateMatch: return "NoTemplateMatch";
    case ErrorCode::WrongLine: return "WrongLine";
    case ErrorCode::WrongCorner: return "WrongCorner";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::BadTemplateParams: return "BadTemplateParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace buildings
