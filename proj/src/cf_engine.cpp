#include "levyarea/cf_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyarea/error.hpp"
#include "levyarea/riccati.hpp"

namespace levyarea {

Complex quadratic_integral(int j, const TransportPath& transport,
                           const CVector& mu_j, const GlobalGrid& grid,
                           const ProblemSpec& spec) {
  const int lo = grid.half_index_of(j - 1);
  const int hi = grid.half_index_of(j);
  if (static_cast<int>(transport.m_samples.size()) <= hi) {
    throw Error(ErrorKind::GridMiss,
                "transport path does not cover t_" + std::to_string(j));
  }
  if (mu_j.size() != spec.d) {
    throw Error(ErrorKind::DimensionMismatch, "mu has wrong length");
  }
  const CVector v = transport.h_samples[hi].transpose() * mu_j;
  auto integrand = [&](int idx) {
    return bilinear_square(transport.m_samples[idx].transpose() * v);
  };

  Complex sum{0.0, 0.0};
  Complex left = integrand(lo);
  for (int idx = lo; idx < hi; idx += 2) {
    const double h = grid.step(idx / 2);
    const Complex right = integrand(idx + 2);
    sum += (h / 6.0) * (left + 4.0 * integrand(idx + 1) + right);
    left = right;
  }
  return sum;
}

CFValue evaluate(const ProblemSpec& spec, const FrequencyPoint& pt,
                 const EvalConfig& config) {
  validate(spec, pt);
  const GlobalGrid grid = GlobalGrid::build(spec, config.grid_step_override);
  const auto paths = solve_riccati_recursive(
      spec, pt, grid, RiccatiOptions{.blowup_cap = config.blowup_cap});

  const int n = spec.n();
  std::vector<TransportPath> transports;
  transports.reserve(n);
  for (int j = 1; j <= n; ++j) {
    transports.push_back(solve_transport(
        j, paths, spec, pt, grid,
        TransportOptions{.condition_cap = config.condition_cap}));
  }
  const MuChain chain = mu_recursion(pt.gammas, transports, grid);

  Diagnostics diag;
  diag.grid_step = grid.max_step();
  std::vector<FactorRecord> factors(n);
  for (int j = 1; j <= n; ++j) {
    factors[j - 1].trace_integral = paths[j - 1].trace_integral;
    factors[j - 1].quadratic_integral =
        quadratic_integral(j, transports[j - 1], chain.mu[j - 1], grid, spec);
    diag.max_k_norm = std::max(diag.max_k_norm, paths[j - 1].max_norm);
  }

  CFValue out = assemble_cf(std::move(factors), std::move(diag));
  if (pt.mode == Mode::Characteristic && std::abs(out.value) > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "modulus " << std::abs(out.value)
       << " exceeds 1; the grid is likely too coarse for this problem";
    out.diagnostics.warnings.push_back(os.str());
  }
  return out;
}

CFValue eval_joint_cf(const ProblemSpec& spec, const FrequencyPoint& pt,
                      const EvalConfig& config) {
  if (pt.mode != Mode::Characteristic) {
    throw Error(ErrorKind::InvalidArgument,
                "eval_joint_cf expects a characteristic-mode point");
  }
  return evaluate(spec, pt, config);
}

CFValue eval_real_mgf(const ProblemSpec& spec, const FrequencyPoint& pt,
                      const EvalConfig& config) {
  if (pt.mode != Mode::Mgf) {
    throw Error(ErrorKind::InvalidArgument,
                "eval_real_mgf expects an mgf-mode point");
  }
  return evaluate(spec, pt, config);
}

}  // namespace levyarea
