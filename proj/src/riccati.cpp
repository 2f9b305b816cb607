#include "levyarea/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyarea/error.hpp"

namespace levyarea {

namespace {

// Coefficients of the j-th equation that do not depend on K_j itself.
struct EquationTerms {
  Complex coeff;      // area coefficient of A_j
  CMatrix a;          // A_j
  CMatrix a_star;     // A_j^*
  CMatrix a_star_a;   // A_j^* A_j
  CMatrix later_lin;  // sum_{r>j} coeff_r A_r

  EquationTerms(int j, const ProblemSpec& spec, const FrequencyPoint& pt)
      : coeff(pt.area_coefficient(j)),
        a(to_complex(spec.matrices[j - 1])),
        a_star(a.transpose()),
        a_star_a(a_star * a),
        later_lin(CMatrix::Zero(spec.d, spec.d)) {
    for (int r = j + 1; r <= spec.n(); ++r) {
      later_lin += pt.area_coefficient(r) * to_complex(spec.matrices[r - 1]);
    }
  }

  // later_k = sum_{r>j} K_r at the evaluation point.
  CMatrix driving(const CMatrix& later_k) const {
    const CMatrix left = later_k + later_lin.transpose();
    const CMatrix right = later_k + later_lin;
    return -(coeff * coeff) * a_star_a - coeff * (left * a + a_star * right);
  }

  CMatrix rhs(const CMatrix& later_k, const CMatrix& k) const {
    const CMatrix q = later_k + later_lin + coeff * a;
    return driving(later_k) - k * q - q.transpose() * k - k * k;
  }
};

}  // namespace

const CMatrix& RiccatiPath::at(const GlobalGrid& grid, double t) const {
  const int idx = grid.half_index_at(t);
  if (idx > last_index()) {
    std::ostringstream os;
    os << "time " << t << " lies beyond the end of path K_" << j;
    throw Error(ErrorKind::GridMiss, os.str());
  }
  return samples[idx];
}

CMatrix assemble_C(int j, double t, std::span<const RiccatiPath> later,
                   const ProblemSpec& spec, const FrequencyPoint& pt,
                   const GlobalGrid& grid) {
  if (t > spec.time(j) + 1e-12 || t < -1e-12) {
    std::ostringstream os;
    os << "time " << t << " outside [0, t_" << j << "]";
    throw Error(ErrorKind::GridMiss, os.str());
  }
  CMatrix later_k = CMatrix::Zero(spec.d, spec.d);
  for (const auto& path : later) later_k += path.at(grid, t);
  return EquationTerms(j, spec, pt).driving(later_k);
}

std::vector<RiccatiPath> solve_riccati_recursive(const ProblemSpec& spec,
                                                 const FrequencyPoint& pt,
                                                 const GlobalGrid& grid,
                                                 const RiccatiOptions& options) {
  validate(spec, pt);
  const int n = spec.n();
  const int d = spec.d;
  std::vector<RiccatiPath> paths(n);

  // Running sum of the already solved paths, sum_{r>j} K_r, per half index.
  std::vector<CMatrix> later_sum(grid.half_index_of(n) + 1,
                                 CMatrix::Zero(d, d));

  for (int j = n; j >= 1; --j) {
    const EquationTerms terms(j, spec, pt);
    const int top = grid.half_index_of(j);
    RiccatiPath& path = paths[j - 1];
    path.j = j;
    path.samples.assign(top + 1, CMatrix::Zero(d, d));

    // Integrate in tau = t_j - t, so dK/dtau = -F(t, K).
    auto f = [&](int idx, const CMatrix& k) -> CMatrix {
      return -terms.rhs(later_sum[idx], k);
    };

    CMatrix y = CMatrix::Zero(d, d);
    CMatrix f0 = f(top, y);
    for (int node = top / 2; node > 0; --node) {
      const int hi = 2 * node;
      const int mid = hi - 1;
      const int lo = hi - 2;
      const double h = grid.step(node - 1);

      const CMatrix k2 = f(mid, y + (0.5 * h) * f0);
      const CMatrix k3 = f(mid, y + (0.5 * h) * k2);
      const CMatrix k4 = f(lo, y + h * k3);
      CMatrix y_next = y + (h / 6.0) * (f0 + 2.0 * k2 + 2.0 * k3 + k4);

      const double norm = norm_inf(y_next);
      if (!(norm <= options.blowup_cap) || !all_finite(y_next)) {
        throw BlowUpError(j, grid.node(node - 1), norm);
      }
      path.max_norm = std::max(path.max_norm, norm);

      const CMatrix f1 = f(lo, y_next);
      path.samples[mid] = 0.5 * (y + y_next) + (h / 8.0) * (f0 - f1);
      path.samples[lo] = y_next;
      y = std::move(y_next);
      f0 = f1;
    }

    Complex integral{0.0, 0.0};
    for (int node = 0; node < top / 2; ++node) {
      const double h = grid.step(node);
      integral += (h / 6.0) * (path.samples[2 * node].trace() +
                               4.0 * path.samples[2 * node + 1].trace() +
                               path.samples[2 * node + 2].trace());
    }
    path.trace_integral = integral;

    for (int idx = 0; idx <= top; ++idx) later_sum[idx] += path.samples[idx];
  }
  return paths;
}

}  // namespace levyarea
