#pragma once

#include <string>
#include <vector>

#include "levyarea/linalg.hpp"

namespace levyarea {

enum class Mode {
  Characteristic,  // exponent i*Lambda_k on the areas
  Mgf,             // real exponent lambda_k on the areas
};

/// Observation times t_1 < ... < t_n (t_0 = 0 is implicit) with one real
/// d x d matrix per time.
struct ProblemSpec {
  int d = 0;
  std::vector<double> times;
  std::vector<RMatrix> matrices;

  int n() const { return static_cast<int>(times.size()); }

  /// t_j for j in [0, n]; time(0) == 0.
  double time(int j) const { return j == 0 ? 0.0 : times[j - 1]; }
};

struct FrequencyPoint {
  std::vector<RVector> gammas;
  std::vector<double> lambdas;
  Mode mode = Mode::Characteristic;

  /// Coefficient multiplying L^{A_r}: i*Lambda_r or lambda_r.
  Complex area_coefficient(int r) const {
    const double l = lambdas[r - 1];
    return mode == Mode::Characteristic ? Complex{0.0, l} : Complex{l, 0.0};
  }
};

FrequencyPoint zero_point(const ProblemSpec& spec,
                          Mode mode = Mode::Characteristic);

void validate(const ProblemSpec& spec);
void validate(const ProblemSpec& spec, const FrequencyPoint& pt);

struct FactorRecord {
  Complex trace_integral;      // int_0^{t_j} Tr K_j
  Complex quadratic_integral;  // int_{t_{j-1}}^{t_j} <...>^2

  Complex log_factor() const {
    return 0.5 * trace_integral - 0.5 * quadratic_integral;
  }
};

struct Diagnostics {
  double grid_step = 0.0;
  double max_k_norm = 0.0;
  std::vector<std::string> warnings;
};

struct CFValue {
  Complex value;
  Complex log_value;
  std::vector<FactorRecord> factors;
  Diagnostics diagnostics;
};

/// Sums the per-factor exponents and takes one final exponential.
CFValue assemble_cf(std::vector<FactorRecord> factors, Diagnostics diag);

}  // namespace levyarea
