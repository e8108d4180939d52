#pragma once

#include <stdexcept>
#include <string>

namespace drad {

/// Invalid or inconsistent run configuration (CLI exit code 3).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable, malformed or inconsistent data files (CLI exit code 4).
class DataError : public std::runtime_error {
 public:
  enum class Kind {
    Io,
    BadMagic,
    VersionMismatch,
    Truncated,
    LabelOutOfRange,
    LengthMismatch,
    Empty,
  };

  DataError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Non-finite values or other numeric breakdown (CLI exit code 5).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace drad
