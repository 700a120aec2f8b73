#pragma once

#include <stdexcept>
#include <string>

namespace vaxwane {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent user configuration (bad JSON, bad schema, bad parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Data that cannot support the requested analysis (no events, non-identifiable
/// covariates, separation).
class DataError : public Error {
 public:
  using Error::Error;
};

/// File-system failures (unreadable input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_no_events();
[[noreturn]] void throw_non_identifiable(const std::string& detail);
[[noreturn]] void throw_separation(const std::string& detail);

}  // namespace vaxwane
