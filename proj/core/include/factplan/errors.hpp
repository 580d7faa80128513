#pragma once

#include <stdexcept>
#include <string>

namespace factplan {

/// Violated structural invariant (overlapping agent sets, mismatched blocks, ...).
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A heuristic or region was used outside of its contract.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Rejection sampling could not find a free configuration.
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The planner could not be set up (infeasible initial state, bad parameters).
class SetupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A closed-form bound diverges for the requested inputs (p̄ = 1).
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scenario file is malformed or does not follow the schema.
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario parsed but violates a geometric invariant.
class ScenarioValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace factplan
