#pragma once

#include <complex>

#include <Eigen/Core>

namespace levyarea {

using Complex = std::complex<double>;

// Dense row-major storage; dimensions in this library are small (2..10).
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Plain transpose. Complex entries are NOT conjugated.
CMatrix transpose_star(const CMatrix& m);

/// Holomorphic square sum_j z_j^2 (no conjugation).
Complex bilinear_square(const CVector& z);

/// Inverse by partial-pivot LU. Throws SingularMatrix when the smallest
/// pivot magnitude falls below 1e-14 * ||m||_inf.
CMatrix mat_inverse(const CMatrix& m);

// Dimension-checked arithmetic. Internal hot loops use Eigen operators
// directly; these are the validated entry points.
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
CMatrix mat_add(const CMatrix& a, const CMatrix& b);
CMatrix scalar_mul(Complex s, const CMatrix& m);
Complex trace(const CMatrix& m);

/// Max absolute row sum.
double norm_inf(const CMatrix& m);

bool all_finite(const CMatrix& m);

CMatrix to_complex(const RMatrix& m);
CVector to_complex(const RVector& v);

}  // namespace levyarea
