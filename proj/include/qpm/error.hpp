#pragma once

#include <stdexcept>
#include <string>

namespace qpm {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Wavelength outside a Sellmeier set's validity window, or a scan/grid
// that would leave it.  Never extrapolated silently.
class RangeError : public Error {
  public:
    using Error::Error;
};

// Invalid configuration or input file (maps to CLI exit code 2).
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Numeric/domain failure during computation (maps to CLI exit code 3):
// no root in bracket, singular decomposition, non-finite objective, ...
class DomainError : public Error {
  public:
    using Error::Error;
};

}  // namespace qpm
