#pragma once

#include <stdexcept>
#include <string>

namespace tsdiv {

/// Unreadable or malformed input data (files, datasets). CLI exit code 2.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation produced or detected non-finite values. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter, dimension and invariant violations use std::invalid_argument.

} // namespace tsdiv
