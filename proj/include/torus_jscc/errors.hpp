#pragma once

#include <stdexcept>
#include <string>

namespace torus_jscc {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  DegenerateBasis,
  InvalidDirection,
  NotPrimitive,
  UnsupportedDimension,
  OutOfRange,
  InfeasibleSeparation,
  GridResolution,
  ConstructionViolated,
  AmbiguousPhase,
  Undecodable,
  Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace torus_jscc
