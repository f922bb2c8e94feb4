#pragma once

#include <stdexcept>
#include <string>

namespace molens {

// Error hierarchy mirrored by the CLI exit codes: config=2, data=3, numeric=4.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or inconsistent configuration (bad option values, missing reference
// energies, mismatched checkpoint metadata).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Malformed input data (parse failures, missing keys, schema violations).
class DataError : public Error {
public:
  using Error::Error;
};

// Numerical failure (non-finite intermediates, domain violations, divergence).
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace molens
