#pragma once

#include <stdexcept>
#include <string>

namespace jrp {

// Malformed or inconsistent input data (instance files, ids, flag values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid numeric parameter (band count, penalty weight, solver schedule).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown job or agent id.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The requested solve exceeds what the solver can handle.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A move set or solution violates the at-most-one assignment rules.
class FeasibilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal consistency check failed (e.g. the job count changed).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jrp
