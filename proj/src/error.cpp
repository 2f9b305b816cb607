#include "levyarea/error.hpp"

#include <sstream>

namespace levyarea {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonIncreasingTimes: return "NonIncreasingTimes";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::EmptyProblem: return "EmptyProblem";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::GridMiss: return "GridMiss";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
  }
  return "Unknown";
}

namespace {

std::string blowup_message(int j, double t, double norm) {
  std::ostringstream os;
  os << "BlowUp: Riccati path K_" << j << " reached norm " << norm
     << " at t = " << t
     << " (exponents outside the region where the functional is finite)";
  return os.str();
}

}  // namespace

BlowUpError::BlowUpError(int j, double t, double norm)
    : Error(ErrorKind::BlowUp, blowup_message(j, t, norm)), j_(j), t_(t) {}

}  // namespace levyarea
