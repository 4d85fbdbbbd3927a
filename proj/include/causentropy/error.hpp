#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causentropy {

enum class ErrorCode {
    NotHermitian,
    NoConvergence,
    DimensionMismatch,
    EmptyKeepSet,
    DomainError,
    Overflow,
    NonPositiveAcceleration,
    InvalidWeights,
    InvalidNoise,
    WrongArity,
    SearchExhausted,
    NotNormalized,
    BadCut,
    BadRegion,
    ConditionViolated,
    NegativeEntropy,
    InvalidLedger,
    BadPartition,
    BadDimension,
    InvalidScheme,
    ZeroCutoff,
    RegulatorViolation,
    NonPositiveDelta,
    SchemeInconsistent,
    NonPositiveG,
    BadGrid,
    TruncationInvalid,
    NonPositiveKappa,
    ConfigInvalid,
    IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; the code is
// stable and is what the CLI and the Python bindings surface.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

    /// Same code, message prefixed with `context`.
    Error with_context(const std::string& context) const { return Error(code_, context + ": " + detail_); }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace causentropy
