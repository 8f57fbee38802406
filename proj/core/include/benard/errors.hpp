// errors.hpp: exception hierarchy for configuration and solver failures.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <stdexcept>
#include <string>

namespace benard {

// Base class so callers can catch everything benard-mix throws in one place.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent run configuration (bad file, bad value, bad grid).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Numerical failure inside a solver (factorization breakdown, non-finite
// values, rank deficiency).
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(what) {}
};

// Advective CFL monitor tripped; the state is too energetic for the step size.
class CflError : public SolverError {
 public:
  explicit CflError(const std::string& what) : SolverError(what) {}
};

}  // namespace benard
