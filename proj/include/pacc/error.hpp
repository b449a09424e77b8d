#pragma once

#include <stdexcept>
#include <string>

namespace pacc {

/// Invalid user input: parameter files, experiment configs, out-of-range specs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its contract (convergence, budget, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two fields or a field and an operator live on different grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pacc
