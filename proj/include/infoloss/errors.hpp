#ifndef INFOLOSS_ERRORS_HPP
#define INFOLOSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace infoloss {

/// Input failed a structural precondition (bad pmf, bad JSON, bad domain).
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A quadrature or iteration failed to reach the requested tolerance.
/// Carries the best estimate obtained so far.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), best_estimate(best_estimate), achieved_error(achieved_error) {}
    double best_estimate;
    double achieved_error;
};

/// Numerical failure inside an algorithm (root finder, inversion, spectral
/// consistency), with enough context to name the offending piece.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A required policy or configuration is missing (e.g. unbounded support
/// with tail truncation disabled).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace infoloss

#endif
