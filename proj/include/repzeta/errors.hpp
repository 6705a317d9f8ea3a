#pragma once

#include "repzeta/bigint.hpp"

#include <stdexcept>
#include <string>

namespace repzeta {

// Bad invocation or malformed input text. CLI exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : UsageError {
    using UsageError::UsageError;
};

// Mathematically invalid request. CLI exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A well-formed request the library cannot answer. CLI exit code 3.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : DomainError {
    std::string field;
    ParameterError(std::string field_name, const std::string& what)
        : DomainError("parameter '" + field_name + "': " + what), field(std::move(field_name)) {}
};

struct NotAUnitError : DomainError {
    using DomainError::DomainError;
};

struct SearchCeilingExceeded : DomainError {
    BigInt ceiling;
    explicit SearchCeilingExceeded(const BigInt& c)
        : DomainError("search ceiling exceeded: " + to_string(c)), ceiling(c) {}
};

struct SameCharacteristicError : DomainError {
    using DomainError::DomainError;
};

struct ModularCaseError : DomainError {
    using DomainError::DomainError;
};

struct PoleError : DomainError {
    using DomainError::DomainError;
};

struct ConvergenceError : DomainError {
    using DomainError::DomainError;
};

struct InsufficientDataError : DomainError {
    using DomainError::DomainError;
};

struct UnsupportedSpecError : CapabilityError {
    using CapabilityError::CapabilityError;
};

}  // namespace repzeta
