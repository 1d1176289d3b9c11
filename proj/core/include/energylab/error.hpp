#pragma once

#include <stdexcept>
#include <string>

namespace energylab {

// Bad arguments: empty factor lists, mismatched groups, violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured cap (group size, subset search, memory).
class CapError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of a procedure does not hold, so its bound is not guaranteed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace energylab
