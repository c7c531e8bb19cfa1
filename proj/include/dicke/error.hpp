#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Input outside an operation's domain (e.g. asking for g at J = 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A model parameter or option failed validation. `field` names the offender.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Quadrature, eigensolver or truncation did not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class CutoffUnconvergedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MemoryBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A sweep step failed; carries the failing step index.
class SweepError : public std::runtime_error {
public:
    SweepError(std::size_t step, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace dicke
