#ifndef REVRAD_ERRORS_HPP
#define REVRAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace revrad {

// Evaluation outside the admissible domain of a profile or kernel.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Invalid grids, parameters, or configuration files.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Violated operator precondition (support margin, step size, ...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: singular solve, diverging iteration.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File read/write failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace revrad

#endif
