#ifndef REFLBOUND_ERRORS_HPP
#define REFLBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reflbound {

/// Malformed orbifold symbol text.
class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed input that is outside the accepted vocabulary
/// (e.g. a hyperbolic signature, a non-manifold mesh).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numeric arguments outside an operation's domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Internal arithmetic that should be exact came out inconsistent.
class inconsistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Iterative computation did not meet its tolerance within the budget.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested accuracy needs more work than the configured budget allows.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace reflbound

#endif // REFLBOUND_ERRORS_HPP
