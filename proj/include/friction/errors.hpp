#ifndef FRICTION_ERRORS_HPP
#define FRICTION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace friction {

// Bad argument: outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data with NaN/Inf or non-positive values where positivity is required.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside a tabulated range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Base for failures of a numerical method (exit code 3 at the CLI).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AccuracyError : public NumericalError {
public:
    AccuracyError(const std::string& what, double achieved)
        : NumericalError(what + " (achieved " + std::to_string(achieved) + ")"), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InstabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace friction

#endif
