#include "levyarea/transport.hpp"

#include <algorithm>
#include <sstream>

#include "levyarea/error.hpp"

namespace levyarea {

TransportPath solve_transport(int j, std::span<const RiccatiPath> paths,
                              const ProblemSpec& spec,
                              const FrequencyPoint& pt, const GlobalGrid& grid,
                              const TransportOptions& options) {
  const int n = spec.n();
  const int d = spec.d;
  const int top = grid.half_index_of(j);
  for (int r = j; r <= n; ++r) {
    if (paths[r - 1].last_index() < top) {
      throw Error(ErrorKind::GridMiss, "Riccati path K_" + std::to_string(r) +
                                           " does not cover [0, t_" +
                                           std::to_string(j) + "]");
    }
  }

  CMatrix lin = CMatrix::Zero(d, d);
  for (int r = j; r <= n; ++r) {
    lin += pt.area_coefficient(r) * to_complex(spec.matrices[r - 1]);
  }
  std::vector<CMatrix> q(top + 1, lin);
  for (int idx = 0; idx <= top; ++idx) {
    for (int r = j; r <= n; ++r) q[idx] += paths[r - 1].sample(idx);
  }

  TransportPath out;
  out.j = j;
  out.h_samples.assign(top + 1, CMatrix::Identity(d, d));
  out.m_samples.assign(top + 1, CMatrix::Identity(d, d));

  CMatrix h_cur = CMatrix::Identity(d, d);
  CMatrix m_cur = CMatrix::Identity(d, d);
  CMatrix dh0 = q[0] * h_cur;
  CMatrix dm0 = -m_cur * q[0];
  for (int node = 0; node < top / 2; ++node) {
    const int lo = 2 * node;
    const int mid = lo + 1;
    const int hi = lo + 2;
    const double h = grid.step(node);

    const CMatrix h2 = h_cur + (0.5 * h) * dh0;
    const CMatrix m2 = m_cur + (0.5 * h) * dm0;
    const CMatrix dh2 = q[mid] * h2;
    const CMatrix dm2 = -m2 * q[mid];
    const CMatrix h3 = h_cur + (0.5 * h) * dh2;
    const CMatrix m3 = m_cur + (0.5 * h) * dm2;
    const CMatrix dh3 = q[mid] * h3;
    const CMatrix dm3 = -m3 * q[mid];
    const CMatrix h4 = h_cur + h * dh3;
    const CMatrix m4 = m_cur + h * dm3;
    const CMatrix dh4 = q[hi] * h4;
    const CMatrix dm4 = -m4 * q[hi];

    CMatrix h_next = h_cur + (h / 6.0) * (dh0 + 2.0 * dh2 + 2.0 * dh3 + dh4);
    CMatrix m_next = m_cur + (h / 6.0) * (dm0 + 2.0 * dm2 + 2.0 * dm3 + dm4);
    const CMatrix dh1 = q[hi] * h_next;
    const CMatrix dm1 = -m_next * q[hi];

    out.h_samples[mid] = 0.5 * (h_cur + h_next) + (h / 8.0) * (dh0 - dh1);
    out.m_samples[mid] = 0.5 * (m_cur + m_next) + (h / 8.0) * (dm0 - dm1);
    out.h_samples[hi] = h_next;
    out.m_samples[hi] = m_next;

    const double cond = norm_inf(h_next) * norm_inf(m_next);
    if (!(cond <= options.condition_cap) || !all_finite(h_next) ||
        !all_finite(m_next)) {
      std::ostringstream os;
      os << "transport H_" << j << " ill-conditioned at t = " << grid.node(node + 1)
         << " (||H|| * ||H^-1|| = " << cond << ")";
      throw Error(ErrorKind::IllConditioned, os.str());
    }
    out.max_condition = std::max(out.max_condition, cond);

    h_cur = std::move(h_next);
    m_cur = std::move(m_next);
    dh0 = dh1;
    dm0 = dm1;
  }
  return out;
}

MuChain mu_recursion(std::span<const RVector> gammas,
                     std::span<const TransportPath> transports,
                     const GlobalGrid& grid) {
  const int n = static_cast<int>(gammas.size());
  MuChain chain;
  chain.mu.resize(n);
  chain.mu[n - 1] = to_complex(gammas[n - 1]);
  for (int j = n - 1; j >= 1; --j) {
    const TransportPath& next = transports[j];  // path j+1
    const CMatrix& m_at_tj = next.m_samples[grid.half_index_of(j)];
    const CMatrix& h_at_end = next.h_samples[grid.half_index_of(j + 1)];
    chain.mu[j - 1] = to_complex(gammas[j - 1]) +
                      m_at_tj.transpose() * (h_at_end.transpose() * chain.mu[j]);
  }
  return chain;
}

}  // namespace levyarea
