#pragma once

#include <stdexcept>
#include <string>

namespace sepscan {

/// Malformed or inconsistent input (bad dimensions, invariant violations,
/// unparseable files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration that cannot be honored, e.g. a net too coarse for the
/// requested accuracy or a problem beyond the dimension guard.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative routine lost the geometry it depends on (degenerate cut,
/// empty barrier domain).
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sepscan
