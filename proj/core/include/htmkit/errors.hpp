#pragma once

#include <stdexcept>
#include <string>

namespace htmkit {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Incompatible shapes: width mismatches, duplicate ids, empty score lists.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Invalid parameter values (exit code 3). `field` names the offending key.
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

private:
  std::string field_;
};

/// Malformed or missing input data (exit code 2).
class DataError : public Error {
public:
  using Error::Error;
};

/// Operation called in a state that cannot serve it, e.g. predicting from an
/// empty store.
class StateError : public Error {
public:
  using Error::Error;
};

/// A metric whose value is undefined for the given inputs (MAPE over
/// all-zero truth).
class UndefinedMetricError : public Error {
public:
  using Error::Error;
};

}  // namespace htmkit
