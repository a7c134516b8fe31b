#include "springchain/error.hpp"

namespace springchain {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveMass: return "NonPositiveMass";
        case ErrorCode::NonPositiveStiffness: return "NonPositiveStiffness";
        case ErrorCode::NegativeDamping: return "NegativeDamping";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TooFewMasses: return "TooFewMasses";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::OracleDimensionExceeded: return "OracleDimensionExceeded";
        case ErrorCode::BothZero: return "BothZero";
        case ErrorCode::DerivedStiffnessNonPositive: return "DerivedStiffnessNonPositive";
        case ErrorCode::SearchExhausted: return "SearchExhausted";
        case ErrorCode::NonFiniteState: return "NonFiniteState";
        case ErrorCode::BadStep: return "BadStep";
        case ErrorCode::NotControllable: return "NotControllable";
        case ErrorCode::NotObservable: return "NotObservable";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::RankDeficientRegressor: return "RankDeficientRegressor";
        case ErrorCode::NonFinite: return "NonFinite";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveMass:
        case ErrorCode::NonPositiveStiffness:
        case ErrorCode::NegativeDamping:
        case ErrorCode::LengthMismatch:
        case ErrorCode::TooFewMasses:
        case ErrorCode::ParseError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::OracleDimensionExceeded:
        case ErrorCode::BothZero:
        case ErrorCode::DerivedStiffnessNonPositive:
        case ErrorCode::BadStep:
        case ErrorCode::NotControllable:
        case ErrorCode::NotObservable:
        case ErrorCode::InsufficientSamples:
            return true;
        default:
            return false;
    }
}

}  // namespace springchain
