#pragma once

#include <stdexcept>
#include <string>

namespace mrp {

enum class ErrorCode {
  NotSquare,
  NegativeEntry,
  RowSumViolation,
  Reducible,
  SingularSystem,
  Singular,
  DegenerateU,
  NonpositiveSojourn,
  MomentOffSupport,
  NonpositiveRate,
  ZeroDiagonal,
  NoConvergence,
  RouteMismatch,
  BadSpec,
};

const char* to_string(ErrorCode code);

/// Library-wide exception; carries the taxonomy code used by the CLI to
/// map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mrp
