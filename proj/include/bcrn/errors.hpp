#pragma once

#include <stdexcept>
#include <string>

namespace bcrn {

/// A parameter is outside the domain of the model.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The harvest-then-transmit branch cannot run (alpha dagger above one or undefined).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine exhausted its iteration budget.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bcrn
