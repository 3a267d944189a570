#pragma once

#include <stdexcept>
#include <string>

namespace adqs {

/// An argument lies outside the domain of the operation it was passed to.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature or root search did not reach its requested accuracy.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ODE integrator ran out of steps (or its step size underflowed).
class IntegrationFailure : public std::runtime_error {
public:
    IntegrationFailure(const std::string& what, double reached)
        : std::runtime_error(what), reached_(reached) {}

    /// Value of the integration variable at which the integrator gave up.
    double reached() const noexcept { return reached_; }

private:
    double reached_;
};

/// find_runtime could not bracket the target before the run-time ceiling.
class BracketFailure : public std::runtime_error {
public:
    BracketFailure(const std::string& what, double last_run_time, double last_probability)
        : std::runtime_error(what), last_run_time_(last_run_time), last_probability_(last_probability) {}

    double last_run_time() const noexcept { return last_run_time_; }
    double last_probability() const noexcept { return last_probability_; }

private:
    double last_run_time_;
    double last_probability_;
};

/// The requested value is outside the range of an inverted function.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Not enough rows to fit a slope.
class InsufficientPoints : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace adqs
