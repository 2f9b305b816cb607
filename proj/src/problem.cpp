#include "levyarea/problem.hpp"

#include <cmath>
#include <sstream>

#include "levyarea/error.hpp"

namespace levyarea {

namespace {

template <typename... Parts>
[[noreturn]] void fail(ErrorKind kind, const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  throw Error(kind, os.str());
}

}  // namespace

FrequencyPoint zero_point(const ProblemSpec& spec, Mode mode) {
  FrequencyPoint pt;
  pt.gammas.assign(spec.n(), RVector::Zero(spec.d));
  pt.lambdas.assign(spec.n(), 0.0);
  pt.mode = mode;
  return pt;
}

void validate(const ProblemSpec& spec) {
  if (spec.d < 1) fail(ErrorKind::DimensionMismatch, "dimension d = ", spec.d, " must be >= 1");
  if (spec.n() == 0) fail(ErrorKind::EmptyProblem, "at least one observation time is required");
  if (static_cast<int>(spec.matrices.size()) != spec.n()) {
    fail(ErrorKind::DimensionMismatch, "expected ", spec.n(), " matrices, got ",
         spec.matrices.size());
  }
  double prev = 0.0;
  for (int j = 1; j <= spec.n(); ++j) {
    const double t = spec.times[j - 1];
    if (!std::isfinite(t)) fail(ErrorKind::NonFiniteInput, "times[", j - 1, "] is not finite");
    if (!(t > prev)) {
      fail(ErrorKind::NonIncreasingTimes, "times[", j - 1, "] = ", t, " (t_", j,
           ") is not greater than t_", j - 1, " = ", prev);
    }
    prev = t;
    const RMatrix& a = spec.matrices[j - 1];
    if (a.rows() != spec.d || a.cols() != spec.d) {
      fail(ErrorKind::DimensionMismatch, "matrices[", j - 1, "] is ", a.rows(), "x",
           a.cols(), ", expected ", spec.d, "x", spec.d);
    }
    if (!a.allFinite()) fail(ErrorKind::NonFiniteInput, "matrices[", j - 1, "] has non-finite entries");
  }
}

void validate(const ProblemSpec& spec, const FrequencyPoint& pt) {
  validate(spec);
  if (static_cast<int>(pt.gammas.size()) != spec.n()) {
    fail(ErrorKind::DimensionMismatch, "expected ", spec.n(), " gammas, got ",
         pt.gammas.size());
  }
  if (static_cast<int>(pt.lambdas.size()) != spec.n()) {
    fail(ErrorKind::DimensionMismatch, "expected ", spec.n(), " lambdas, got ",
         pt.lambdas.size());
  }
  for (int j = 1; j <= spec.n(); ++j) {
    const RVector& g = pt.gammas[j - 1];
    if (g.size() != spec.d) {
      fail(ErrorKind::DimensionMismatch, "gammas[", j - 1, "] has length ", g.size(),
           ", expected ", spec.d);
    }
    if (!g.allFinite()) fail(ErrorKind::NonFiniteInput, "gammas[", j - 1, "] has non-finite entries");
    if (!std::isfinite(pt.lambdas[j - 1])) {
      fail(ErrorKind::NonFiniteInput, "lambdas[", j - 1, "] is not finite");
    }
  }
}

CFValue assemble_cf(std::vector<FactorRecord> factors, Diagnostics diag) {
  CFValue out;
  out.log_value = Complex{0.0, 0.0};
  for (const auto& f : factors) out.log_value += f.log_factor();
  out.value = std::exp(out.log_value);
  out.factors = std::move(factors);
  out.diagnostics = std::move(diag);
  return out;
}

}  // namespace levyarea
