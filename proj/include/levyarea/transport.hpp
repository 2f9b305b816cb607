#pragma once

#include <span>
#include <vector>

#include "levyarea/grid.hpp"
#include "levyarea/riccati.hpp"

namespace levyarea {

/// H_j and its inverse M_j = H_j^{-1}, integrated side by side from the
/// identity at t = 0 up to t_j.
struct TransportPath {
  int j = 0;
  std::vector<CMatrix> h_samples;
  std::vector<CMatrix> m_samples;
  double max_condition = 1.0;  // max over samples of ||H|| * ||M||
};

struct TransportOptions {
  double condition_cap = 1e10;
};

/// dH/dt = Q H, dM/dt = -M Q with Q = sum_{r>=j} K_r + sum_{r>=j} a_r A_r.
/// `paths` is the full Riccati solution indexed by j-1.
TransportPath solve_transport(int j, std::span<const RiccatiPath> paths,
                              const ProblemSpec& spec,
                              const FrequencyPoint& pt, const GlobalGrid& grid,
                              const TransportOptions& options = {});

struct MuChain {
  std::vector<CVector> mu;  // indexed by j-1
};

/// mu_n = gamma_n, mu_j = gamma_j + M_{j+1}(t_j)^* H_{j+1}(t_{j+1})^* mu_{j+1}.
MuChain mu_recursion(std::span<const RVector> gammas,
                     std::span<const TransportPath> transports,
                     const GlobalGrid& grid);

}  // namespace levyarea
