#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermovisc {

enum class ErrorKind {
  NonPositiveDeterminant,
  NonPositiveTemperature,
  DimensionMismatch,
  InvalidParams,
  NotPositiveDefinite,
  InvalidSymmetry,
  NonFinite,
  DetFiCollapse,
  InvalidArgument,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a typed error kind. All library failures are reported
/// through this type so callers (the CLI in particular) can map them to exit
/// codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thermovisc
