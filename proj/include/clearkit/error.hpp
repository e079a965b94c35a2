#pragma once

#include <stdexcept>
#include <string>

namespace clearkit {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed config, unknown key, invalid argument. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy result. CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The 2x2 segment-amplitude system is too ill-conditioned to solve.
class SingularSystemError : public NumericalError {
 public:
  SingularSystemError(const std::string& what, double condition_number)
      : NumericalError(what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

}  // namespace clearkit
