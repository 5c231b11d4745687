#pragma once

#include <stdexcept>
#include <string>

namespace zakgross {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Stable machine-readable name, used by the CLI's structured stderr.
  virtual const char* kind() const noexcept { return "Error"; }
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DomainError"; }
};

/// A configuration or state specification is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConfigError"; }
};

/// A lattice sum would need more terms than the truncation policy allows.
class NonConvergent : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonConvergent"; }
};

/// A lattice sum was requested without a declared decay envelope.
class DecayUnknown : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DecayUnknown"; }
};

/// A numeric path was requested for an ideal (non-normalizable) codeword.
class SingularState : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "SingularState"; }
};

/// Grid dimensions are not compatible with shifts by one logical step.
class GridIncommensurate : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "GridIncommensurate"; }
};

/// Two independent evaluation paths disagreed beyond their stated tolerance.
class CrossCheckFailed : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "CrossCheckFailed"; }
};

}  // namespace zakgross
