#pragma once

#include <stdexcept>
#include <string>

namespace rhk {

// Base class for all toolkit errors so callers can catch in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A numerical routine could not reach its accuracy target.
struct AccuracyError : Error {
  using Error::Error;
};

// A hard resource cap (event count, memory budget) was hit.
struct ResourceError : Error {
  using Error::Error;
};

// Inputs that must describe the same experiment disagree.
struct ConsistencyError : Error {
  using Error::Error;
};

// A statistic is undefined on the given input (e.g. constant path).
struct DegenerateError : Error {
  using Error::Error;
};

// Bad experiment configuration (unknown scenario, invalid parameters).
struct ConfigError : Error {
  using Error::Error;
};

// A scenario directory does not contain the expected artifacts.
struct MissingDataError : Error {
  using Error::Error;
};

}  // namespace rhk
