#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3lat {

enum class ErrorKind {
  SingularPivot,
  Degenerate,
  DegenerateInput,
  DegenerateForm,
  DependentSpan,
  OddLattice,
  ZeroVector,
  TooLarge,
  ResourceCap,
  NotPositiveDefinite,
  NotNegativeDefinite,
  ComplementNotDefinite,
  NotCodeAutomorphism,
  NotStable,
  NotIntegral,
  NotFoundWithinBounds,
  UnknownName,
  Precondition,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library surfaces as this exception; `kind()` is the
/// machine-readable part and drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace k3lat
