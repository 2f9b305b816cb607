#pragma once

#include <span>
#include <vector>

#include "levyarea/grid.hpp"
#include "levyarea/linalg.hpp"
#include "levyarea/problem.hpp"

namespace levyarea {

/// K_j sampled on the half grid over [0, t_j].
struct RiccatiPath {
  int j = 0;
  std::vector<CMatrix> samples;
  Complex trace_integral;  // int_0^{t_j} Tr K_j(s) ds
  double max_norm = 0.0;

  const CMatrix& sample(int idx) const { return samples[idx]; }
  int last_index() const { return static_cast<int>(samples.size()) - 1; }
  /// Sample at time t; throws GridMiss off the grid or outside [0, t_j].
  const CMatrix& at(const GlobalGrid& grid, double t) const;
};

struct RiccatiOptions {
  double blowup_cap = 1e8;
};

/// Driving term C_j(t) of the j-th equation. `later` holds the solved paths
/// K_{j+1}..K_n in that order (later[0] is K_{j+1}).
CMatrix assemble_C(int j, double t, std::span<const RiccatiPath> later,
                   const ProblemSpec& spec, const FrequencyPoint& pt,
                   const GlobalGrid& grid);

/// Solves K_n, ..., K_1 backward from K_j(t_j) = 0 with classical RK4 on the
/// grid nodes. Midpoint samples come from the cubic Hermite interpolant of
/// each step, which keeps them fourth-order accurate. Returned vector is
/// indexed by j-1.
std::vector<RiccatiPath> solve_riccati_recursive(
    const ProblemSpec& spec, const FrequencyPoint& pt, const GlobalGrid& grid,
    const RiccatiOptions& options = {});

}  // namespace levyarea
