#pragma once

#include <stdexcept>
#include <string>

namespace osc {

// Bad arguments: wrong dimension, malformed files, out-of-range parameters.
// The CLI maps these to exit code 2.
class InputError : public std::invalid_argument {
 public:
  InputError(const std::string& module, const std::string& what)
      : std::invalid_argument(module + ": " + what) {}
};

// A numerical precondition does not hold for the data at hand (point on the
// zero set, too many degenerate directions, failed separator check).
// The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what) {}
};

}  // namespace osc
