#pragma once

#include <stdexcept>
#include <string>

namespace fracthermo {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative Gamma argument, t outside [0,1], inadmissible
/// parameters, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a numeric evaluation produces a value the caller cannot use:
/// a non-finite integrand sample or a source term evaluated outside its
/// domain. `where()` is the abscissa (s or t) at which it happened.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double where)
        : std::runtime_error(what), where_(where) {}

    double where() const noexcept { return where_; }

private:
    double where_;
};

}  // namespace fracthermo
