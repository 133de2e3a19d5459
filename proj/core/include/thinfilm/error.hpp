#pragma once

#include <stdexcept>
#include <string>

namespace thinfilm {

/// Failure categories surfaced by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  Config,             ///< invalid parameter or malformed configuration
  NonPositiveHeight,  ///< film height reached zero or below
  NonFinite,          ///< NaN/Inf appeared in the state
  DryOut,             ///< negative constant force: film dries out in finite time
  BlowUp,             ///< ODE oracle trajectory left the admissible range
  StepLimit,          ///< time stepping exhausted its step budget
  Unavailable,        ///< a bound cannot be evaluated for these parameters
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Configuration error naming the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& reason)
      : Error(ErrorKind::Config, key + ": " + reason), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace thinfilm
