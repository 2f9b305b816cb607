#pragma once

#include <span>
#include <vector>

#include "levyarea/linalg.hpp"
#include "levyarea/problem.hpp"

namespace levyarea {

// Closed-form evaluation for d = 2 with every A_j equal to the rotation
// generator [[0, -1], [1, 0]]. There the Riccati system collapses to scalar
// equations, and the partial sums s_j = k_j + ... + k_n solve
// s' = c_j^2 - s^2 with c_j = Lambda_j + ... + Lambda_n.

inline constexpr double kDegenerateThreshold = 1e-12;

struct ScalarChain {
  std::vector<double> times;        // t_0 = 0, t_1, ..., t_n
  std::vector<double> c;            // c_j, indexed by j-1
  std::vector<double> s_terminal;   // s_j(t_j), indexed by j-1
  std::vector<bool> degenerate;     // |c_j| < kDegenerateThreshold

  int n() const { return static_cast<int>(c.size()); }
  /// s_j(t) for t in [0, t_j].
  double s_at(int j, double t) const;
};

ScalarChain scalar_chain(std::span<const double> lambdas,
                         std::span<const double> times);

/// E[exp(i sum Lambda_k L_{t_k})] as a product of hyperbolic factors.
Complex area_product_formula(std::span<const double> lambdas,
                             std::span<const double> times);

/// a_j(t) = int_0^t s_j(u) du.
double a_eval(int j, double t, const ScalarChain& chain);

/// H_j(t) = exp(a_j(t)) * [[cosh(c_j t), -i sinh(c_j t)],
///                         [i sinh(c_j t),  cosh(c_j t)]].
CMatrix h_closed(int j, double t, const ScalarChain& chain);

/// True when d == 2 and every matrix is the standard rotation generator.
bool is_levy2d(const ProblemSpec& spec);

CFValue eval_joint_cf_2d(std::span<const RVector> gammas,
                         std::span<const double> lambdas,
                         std::span<const double> times);

/// Checked entry point; throws ShapeError unless is_levy2d(spec).
CFValue eval_joint_cf_2d(const ProblemSpec& spec, const FrequencyPoint& pt);

}  // namespace levyarea
