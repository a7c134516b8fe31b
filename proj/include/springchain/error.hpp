#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace springchain {

enum class ErrorCode {
    // chain_model
    NonPositiveMass,
    NonPositiveStiffness,
    NegativeDamping,
    LengthMismatch,
    TooFewMasses,
    ParseError,
    InvalidArgument,
    // poly_engine
    OracleDimensionExceeded,
    BothZero,
    // analysis
    DerivedStiffnessNonPositive,
    SearchExhausted,
    // dynamics
    NonFiniteState,
    BadStep,
    NotControllable,
    NotObservable,
    InsufficientSamples,
    RankDeficientRegressor,
    NonFinite,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for codes caused by bad caller input rather than a failed computation.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace springchain
