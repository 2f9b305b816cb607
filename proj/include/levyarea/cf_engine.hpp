#pragma once

#include <optional>

#include "levyarea/grid.hpp"
#include "levyarea/problem.hpp"
#include "levyarea/transport.hpp"

namespace levyarea {

struct EvalConfig {
  std::optional<double> grid_step_override;
  double blowup_cap = 1e8;
  double condition_cap = 1e10;
};

/// int_{t_{j-1}}^{t_j} <M_j(s)^* H_j(t_j)^* mu_j>^2 ds by composite Simpson
/// on the half grid.
Complex quadratic_integral(int j, const TransportPath& transport,
                           const CVector& mu_j, const GlobalGrid& grid,
                           const ProblemSpec& spec);

/// Dispatches on pt.mode.
CFValue evaluate(const ProblemSpec& spec, const FrequencyPoint& pt,
                 const EvalConfig& config = {});

/// E[exp(i sum <gamma_k, W_{t_k}> + i sum Lambda_k L^{A_k}_{t_k})].
CFValue eval_joint_cf(const ProblemSpec& spec, const FrequencyPoint& pt,
                      const EvalConfig& config = {});

/// Same functional with real exponents lambda_k on the areas. Only finite for
/// small enough lambda; leaving that region shows up as BlowUp.
CFValue eval_real_mgf(const ProblemSpec& spec, const FrequencyPoint& pt,
                      const EvalConfig& config = {});

}  // namespace levyarea
