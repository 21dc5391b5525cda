#pragma once

#include <stdexcept>
#include <string>

namespace hypdyn {

// Domain errors use std::domain_error directly.

/// A runtime invariant failed (e.g. a wandering lattice with coincident orbit points).
class InvariantViolation : public std::logic_error {
public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : std::logic_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

/// Scenario configuration rejected by validation; `pointer` is a JSON pointer to the offending value.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string& message)
        : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message),
          pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

}  // namespace hypdyn
