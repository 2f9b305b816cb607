#include "levyarea/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "levyarea/error.hpp"

namespace levyarea {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": shapes " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()) + " and " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

CMatrix transpose_star(const CMatrix& m) { return m.transpose(); }

Complex bilinear_square(const CVector& z) {
  Complex sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < z.size(); ++i) sum += z[i] * z[i];
  return sum;
}

CMatrix mat_inverse(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "mat_inverse: matrix not square");
  }
  const double scale = norm_inf(m);
  Eigen::PartialPivLU<CMatrix> lu(m);
  const auto& packed = lu.matrixLU();
  double min_pivot = std::abs(packed(0, 0));
  for (Eigen::Index i = 1; i < packed.rows(); ++i) {
    min_pivot = std::min(min_pivot, std::abs(packed(i, i)));
  }
  if (!(min_pivot >= 1e-14 * scale) || scale == 0.0) {
    throw Error(ErrorKind::SingularMatrix,
                "mat_inverse: pivot " + std::to_string(min_pivot) +
                    " below 1e-14 * ||M||");
  }
  return lu.inverse();
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "mat_mul: inner dimensions " + std::to_string(a.cols()) +
                    " and " + std::to_string(b.rows()));
  }
  return a * b;
}

CMatrix mat_add(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "mat_add");
  return a + b;
}

CMatrix scalar_mul(Complex s, const CMatrix& m) { return s * m; }

Complex trace(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "trace: matrix not square");
  }
  return m.trace();
}

double norm_inf(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    best = std::max(best, m.row(i).cwiseAbs().sum());
  }
  return best;
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

CMatrix to_complex(const RMatrix& m) { return m.cast<Complex>(); }

CVector to_complex(const RVector& v) { return v.cast<Complex>(); }

}  // namespace levyarea
