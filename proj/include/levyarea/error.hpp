#pragma once

#include <stdexcept>
#include <string>

namespace levyarea {

enum class ErrorKind {
  InvalidArgument,
  NonIncreasingTimes,
  DimensionMismatch,
  NonFiniteInput,
  EmptyProblem,
  ShapeError,
  SingularMatrix,
  GridMiss,
  BlowUp,
  IllConditioned,
  PoleEncountered,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so that the C API and
// the CLI can map it onto a stable status/exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a Riccati path leaves the region where it stays finite.
class BlowUpError : public Error {
 public:
  BlowUpError(int j, double t, double norm);

  int index() const noexcept { return j_; }
  double time() const noexcept { return t_; }

 private:
  int j_;
  double t_;
};

}  // namespace levyarea
