#pragma once

#include <stdexcept>
#include <string>

namespace di {

/// Input that violates a documented precondition (bad parameters, malformed
/// files, unsupported field sizes). CLI exit code 4.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive enumeration would exceed the configured subset budget.
/// CLI exit code 3.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A randomized or staged construction failed to produce the promised object
/// (retryable with a different seed). Carries the seed that failed.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, unsigned long long seed)
        : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}
    explicit ConstructionError(const std::string& what) : std::runtime_error(what), seed_(0) {}
    unsigned long long seed() const { return seed_; }

private:
    unsigned long long seed_;
};

} // namespace di
