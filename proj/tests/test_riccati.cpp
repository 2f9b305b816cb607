#include "levyarea/riccati.hpp"

#include <random>

#include <gtest/gtest.h>

#include "levyarea/error.hpp"
#include "oracles/oracles.hpp"

namespace levyarea {
namespace {

RMatrix rotation() {
  RMatrix a(2, 2);
  a << 0.0, -1.0, 1.0, 0.0;
  return a;
}

ProblemSpec levy_problem(std::vector<double> times) {
  return ProblemSpec{2, times, std::vector<RMatrix>(times.size(), rotation())};
}

FrequencyPoint area_point(const ProblemSpec& spec, std::vector<double> lambdas,
                          Mode mode = Mode::Characteristic) {
  FrequencyPoint pt = zero_point(spec, mode);
  pt.lambdas = std::move(lambdas);
  return pt;
}

TEST(AssembleC, LastEquationWithRotationIsScaledIdentity) {
  const ProblemSpec spec = levy_problem({1.0});
  const GlobalGrid grid = GlobalGrid::build(spec);
  const CMatrix c = assemble_C(1, 0.5, {}, spec, area_point(spec, {1.7}), grid);
  EXPECT_LT(norm_inf(c - 1.7 * 1.7 * CMatrix::Identity(2, 2)), 1e-14);
}

TEST(AssembleC, VanishesWithoutAreaFrequencies) {
  std::mt19937_64 rng(1);
  const RMatrix a = oracle::random_matrix(rng, 3);
  const ProblemSpec spec{3, {0.5, 1.0}, {a, a.transpose()}};
  const FrequencyPoint pt = zero_point(spec);
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, pt, grid);
  const CMatrix c = assemble_C(1, 0.25, std::span(paths).subspan(1), spec, pt, grid);
  EXPECT_EQ(norm_inf(c), 0.0);
}

TEST(AssembleC, SecondToLastEquationWithRotation) {
  // (L1^2 A*A) - i L1 [(k I + i L2 A*) A + A* (k I + i L2 A)] with A*A = I and
  // A + A* = 0 leaves (L1^2 + 2 L1 L2) I whatever the scalar k is.
  const double l1 = 0.7;
  const double l2 = -0.3;
  const ProblemSpec spec = levy_problem({0.5, 1.0});
  const FrequencyPoint pt = area_point(spec, {l1, l2});
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, pt, grid);
  for (double t : {0.0, 0.25, 0.5}) {
    const CMatrix c = assemble_C(1, t, std::span(paths).subspan(1), spec, pt, grid);
    EXPECT_LT(norm_inf(c - (l1 * l1 + 2 * l1 * l2) * CMatrix::Identity(2, 2)),
              1e-12)
        << "t = " << t;
  }
  EXPECT_THROW(assemble_C(1, 0.3001, std::span(paths).subspan(1), spec, pt, grid),
               Error);
  EXPECT_THROW(assemble_C(1, 0.75, std::span(paths).subspan(1), spec, pt, grid),
               Error);
}

TEST(Riccati, SingleTimeMatchesTanhSolution) {
  const ProblemSpec spec = levy_problem({1.0});
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, area_point(spec, {1.0}), grid);
  const RiccatiPath& k = paths[0];
  EXPECT_EQ(norm_inf(k.samples.back()), 0.0);
  EXPECT_NEAR(k.sample(0)(0, 0).real(), -0.76159415595576489, 1e-12);
  EXPECT_NEAR(k.sample(0)(1, 1).real(), -0.76159415595576489, 1e-12);
  EXPECT_NEAR(k.trace_integral.real(), -0.86756166096605437, 1e-12);
  EXPECT_NEAR(k.trace_integral.imag(), 0.0, 1e-15);
  // Hermite midpoints stay on the tanh curve.
  for (int idx = 1; idx < k.last_index(); idx += 2 * 97) {
    const double t = grid.point(idx);
    EXPECT_NEAR(k.sample(idx)(0, 0).real(), std::tanh(t - 1.0), 1e-12);
  }
}

TEST(Riccati, ZeroFrequenciesGiveZeroPaths) {
  std::mt19937_64 rng(9);
  const ProblemSpec spec{3,
                         {0.4, 0.9, 1.3},
                         {oracle::random_matrix(rng, 3), oracle::random_matrix(rng, 3),
                          oracle::random_matrix(rng, 3)}};
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, zero_point(spec), grid);
  for (const auto& path : paths) {
    EXPECT_EQ(path.trace_integral, Complex(0.0, 0.0));
    for (const auto& s : path.samples) EXPECT_EQ(norm_inf(s), 0.0);
  }
}

TEST(Riccati, TwoTimesMatchScalarSystem) {
  const std::vector<double> lambdas = {0.7, -0.3};
  const std::vector<double> times = {0.5, 1.0};
  const ProblemSpec spec = levy_problem(times);
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, area_point(spec, lambdas), grid);
  const auto ref = oracle::scalar_levy_system(lambdas, times);
  for (int j = 1; j <= 2; ++j) {
    const CMatrix& k0 = paths[j - 1].sample(0);
    EXPECT_NEAR(k0(0, 0).real(), ref.k_at_zero[j - 1], 1e-8) << "j = " << j;
    EXPECT_NEAR(k0(1, 1).real(), ref.k_at_zero[j - 1], 1e-8) << "j = " << j;
    EXPECT_NEAR(paths[j - 1].trace_integral.real(), 2.0 * ref.integral[j - 1], 1e-8);
  }
}

TEST(Riccati, ThreeTimesMatchScalarSystem) {
  const std::vector<double> lambdas = {1.1, 0.4, -1.6};
  const std::vector<double> times = {0.25, 0.75, 1.5};
  const ProblemSpec spec = levy_problem(times);
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, area_point(spec, lambdas), grid);
  const auto ref = oracle::scalar_levy_system(lambdas, times);
  for (int j = 1; j <= 3; ++j) {
    EXPECT_NEAR(paths[j - 1].sample(0)(0, 0).real(), ref.k_at_zero[j - 1], 1e-8);
    EXPECT_NEAR(paths[j - 1].trace_integral.real(), 2.0 * ref.integral[j - 1], 1e-8);
  }
}

TEST(Riccati, PathsStaySymmetricForGeneralMatrices) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 2 + trial % 3;
    ProblemSpec spec{d, {0.3, 0.8, 1.0}, {}};
    for (int k = 0; k < 3; ++k) spec.matrices.push_back(oracle::random_matrix(rng, d));
    FrequencyPoint pt = zero_point(spec);
    pt.lambdas = {u(rng), u(rng), u(rng)};
    const GlobalGrid grid = GlobalGrid::build(spec);
    for (const auto& path : solve_riccati_recursive(spec, pt, grid)) {
      for (const auto& s : path.samples) {
        ASSERT_LE(norm_inf(s - transpose_star(s)), 1e-9);
      }
    }
  }
}

TEST(Riccati, RotationPathsAreRealScalarMatrices) {
  const ProblemSpec spec = levy_problem({0.4, 1.0, 1.2});
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths =
      solve_riccati_recursive(spec, area_point(spec, {-0.8, 1.3, 0.6}), grid);
  for (const auto& path : paths) {
    for (const auto& s : path.samples) {
      ASSERT_LE(s.imag().cwiseAbs().maxCoeff(), 1e-9);
      ASSERT_LE(std::abs(s(0, 1)) + std::abs(s(1, 0)), 1e-9);
      ASSERT_LE(std::abs(s(0, 0) - s(1, 1)), 1e-9);
    }
  }
}

TEST(Riccati, PartialSumsSolveRiccatiWithoutLinearTerm) {
  // s_j = sum_{r>=j} k_r satisfies s' = c_j^2 - s^2 with c_j = sum_{r>=j} L_r.
  const std::vector<double> lambdas = {0.9, -0.4, 1.2};
  const ProblemSpec spec = levy_problem({0.5, 1.0, 1.5});
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, area_point(spec, lambdas), grid);
  for (int j = 1; j <= 3; ++j) {
    double c = 0.0;
    for (int r = j; r <= 3; ++r) c += lambdas[r - 1];
    auto s = [&](int idx) {
      double sum = 0.0;
      for (int r = j; r <= 3; ++r) sum += paths[r - 1].sample(idx)(0, 0).real();
      return sum;
    };
    const double delta = 0.5 * grid.step(0);
    const int top = grid.half_index_of(j);
    // Stencils stay inside a single uniform interval.
    for (int idx = 4; idx + 4 <= top; idx += 61) {
      if (grid.point(idx + 2) - grid.point(idx - 2) > 4 * delta * (1 + 1e-9)) continue;
      const double derivative =
          (s(idx - 2) - 8 * s(idx - 1) + 8 * s(idx + 1) - s(idx + 2)) / (12 * delta);
      EXPECT_NEAR(derivative, c * c - s(idx) * s(idx), 1e-7) << "j=" << j << " idx=" << idx;
    }
  }
}

TEST(Riccati, FourthOrderConvergence) {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const ProblemSpec spec = levy_problem({2.0});
    const FrequencyPoint pt = area_point(spec, {lambda});
    const double exact = lambda * std::tanh(-lambda * 2.0);
    auto error = [&](double h) {
      const GlobalGrid grid = GlobalGrid::build(spec, h);
      const auto paths = solve_riccati_recursive(spec, pt, grid);
      return std::abs(paths[0].sample(0)(0, 0).real() - exact);
    };
    const double coarse = error(1.0 / 8);
    const double fine = error(1.0 / 16);
    EXPECT_GE(coarse / fine, 12.0) << "lambda = " << lambda << " errors "
                                   << coarse << " " << fine;
  }
}

TEST(Riccati, RealExponentBlowsUp) {
  const ProblemSpec spec = levy_problem({1.0});
  const GlobalGrid grid = GlobalGrid::build(spec);
  try {
    solve_riccati_recursive(spec, area_point(spec, {10.0}, Mode::Mgf), grid);
    FAIL() << "expected BlowUp";
  } catch (const BlowUpError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BlowUp);
    EXPECT_EQ(e.index(), 1);
    // tan blows up once 10 (1 - t) reaches pi / 2
    EXPECT_NEAR(e.time(), 1.0 - M_PI / 20.0, 0.01);
  }
  EXPECT_NO_THROW(
      solve_riccati_recursive(spec, area_point(spec, {0.1}, Mode::Mgf), grid));
}

}  // namespace
}  // namespace levyarea
