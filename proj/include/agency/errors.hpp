#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace agency {

using Json = nlohmann::ordered_json;

enum class ErrorKind {
    InvalidChain,
    SupportCapExceeded,
    ConditionHasZeroProbability,
    PatternNotInTrajectory,
    EntityCapExceeded,
    UnknownEntity,
    QueryInvariantViolated,
    AnchorSliceMissing,
    EmptyEnvironmentSet,
    HorizonExceedsChain,
    InterpenetratingEntitySet,
    EnvironmentNotCoPerception,
    NotAPaLoop,
    PreconditionViolated,
    UnknownFixture,
};

std::string_view to_string(ErrorKind kind);

/// Violation of an operation's domain contract. Carries a machine-readable
/// kind and an optional structured payload (e.g. a witness).
class DomainError : public std::runtime_error {
public:
    DomainError(ErrorKind kind, const std::string& message, Json detail = Json::object())
        : std::runtime_error(message), kind_(kind), detail_(std::move(detail)) {}

    ErrorKind kind() const { return kind_; }
    const Json& detail() const { return detail_; }

private:
    ErrorKind kind_;
    Json detail_;
};

/// Malformed input document. `where` names the offending field path.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& message)
        : std::runtime_error(where.empty() ? message : where + ": " + message), where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

}  // namespace agency
