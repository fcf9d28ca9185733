#include "agency/errors.hpp"

namespace agency {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidChain: return "InvalidChain";
        case ErrorKind::SupportCapExceeded: return "SupportCapExceeded";
        case ErrorKind::ConditionHasZeroProbability: return "ConditionHasZeroProbability";
        case ErrorKind::PatternNotInTrajectory: return "PatternNotInTrajectory";
        case ErrorKind::EntityCapExceeded: return "EntityCapExceeded";
        case ErrorKind::UnknownEntity: return "UnknownEntity";
        case ErrorKind::QueryInvariantViolated: return "QueryInvariantViolated";
        case ErrorKind::AnchorSliceMissing: return "AnchorSliceMissing";
        case ErrorKind::EmptyEnvironmentSet: return "EmptyEnvironmentSet";
        case ErrorKind::HorizonExceedsChain: return "HorizonExceedsChain";
        case ErrorKind::InterpenetratingEntitySet: return "InterpenetratingEntitySet";
        case ErrorKind::EnvironmentNotCoPerception: return "EnvironmentNotCoPerception";
        case ErrorKind::NotAPaLoop: return "NotAPaLoop";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::UnknownFixture: return "UnknownFixture";
    }
    return "Unknown";
}

}  // namespace agency
