#pragma once

#include <stdexcept>
#include <string>

namespace binets {

enum class ErrorKind {
  DimensionMismatch,
  Degenerate,
  Regularity,
  NotOrthogonal,
  NotConjugate,
  NotCircular,
  PointAtInfinity,
  NotASphere,
  InvalidInput,
  Schema,
  Io,
};

const char* to_string(ErrorKind kind);

// Every failure in the library is reported through this type. `where` names
// the offending cell, field path or argument when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string where = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::string where_;
};

}  // namespace binets
