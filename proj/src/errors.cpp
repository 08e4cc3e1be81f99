#include "haulnet/errors.hpp"

namespace haulnet {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonStochasticMatrix: return "NonStochasticMatrix";
        case ErrorCode::ReducibleMatrix: return "ReducibleMatrix";
        case ErrorCode::UtilizationExceedsOne: return "UtilizationExceedsOne";
        case ErrorCode::PopulationNotOne: return "PopulationNotOne";
        case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::DegenerateVariance: return "DegenerateVariance";
        case ErrorCode::Nonconvergence: return "Nonconvergence";
        case ErrorCode::AssumptionViolated: return "AssumptionViolated";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace haulnet
