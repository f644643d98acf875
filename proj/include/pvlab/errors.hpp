#pragma once

#include <stdexcept>
#include <string>

namespace pvlab {

// Argument outside the mathematical domain of an operation (n_max < 2, r < 1, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Query beyond the range a table was built for.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A documented precondition of an identity or construction does not hold.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A grid is too coarse to resolve a cutoff's support.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Index arithmetic would overflow the signal/window types.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pvlab
