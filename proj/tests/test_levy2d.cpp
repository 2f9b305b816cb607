#include "levyarea/levy2d.hpp"

#include <random>

#include <gtest/gtest.h>

#include "levyarea/cf_engine.hpp"
#include "levyarea/error.hpp"
#include "oracles/oracles.hpp"

namespace levyarea {
namespace {

RMatrix rotation() {
  RMatrix a(2, 2);
  a << 0.0, -1.0, 1.0, 0.0;
  return a;
}

ProblemSpec levy_problem(const std::vector<double>& times) {
  return ProblemSpec{2, times, std::vector<RMatrix>(times.size(), rotation())};
}

TEST(ScalarChain, BaseCase) {
  const std::vector<double> l = {1.0};
  const std::vector<double> t = {1.0};
  const ScalarChain chain = scalar_chain(l, t);
  EXPECT_EQ(chain.c[0], 1.0);
  EXPECT_EQ(chain.s_terminal[0], 0.0);
  EXPECT_FALSE(chain.degenerate[0]);
  EXPECT_NEAR(chain.s_at(1, 0.0), -std::tanh(1.0), 1e-15);
}

TEST(ScalarChain, DegenerateFirstSum) {
  const std::vector<double> l = {1.0, -1.0};
  const std::vector<double> t = {0.5, 1.0};
  const ScalarChain chain = scalar_chain(l, t);
  EXPECT_EQ(chain.c[0], 0.0);
  EXPECT_EQ(chain.c[1], -1.0);
  EXPECT_TRUE(chain.degenerate[0]);
  EXPECT_FALSE(chain.degenerate[1]);
  // s_1(t_1) = s_2(t_1) = c_2 tanh(c_2 (t_1 - t_2))
  EXPECT_NEAR(chain.s_terminal[0], -std::tanh(0.5), 1e-15);
  EXPECT_NEAR(chain.s_terminal[1], 0.0, 0.0);
  for (int j = 1; j < chain.n(); ++j) {
    EXPECT_NEAR(chain.c[j - 1] - chain.c[j], l[j - 1], 1e-15);
  }
}

TEST(ScalarChain, DegenerateBranchIsTheLimit) {
  const std::vector<double> t = {0.7, 1.3, 2.0};
  const std::vector<double> deg_l = {0.8, -1.4, 0.6};  // c_1 = 0
  const ScalarChain deg = scalar_chain(deg_l, t);
  ASSERT_TRUE(deg.degenerate[0]);
  const double deg_value = area_product_formula(deg_l, t).real();
  for (auto [eps, tol] : {std::pair{1e-6, 1e-5}, std::pair{1e-9, 1e-8}}) {
    const std::vector<double> l = {0.8 + eps, -1.4, 0.6};
    const ScalarChain near = scalar_chain(l, t);
    ASSERT_FALSE(near.degenerate[0]);
    EXPECT_NEAR(area_product_formula(l, t).real(), deg_value, tol);
    for (double s : {0.0, 0.3, 0.7}) {
      EXPECT_NEAR(near.s_at(1, s), deg.s_at(1, s), tol);
      EXPECT_NEAR(a_eval(1, s, near), a_eval(1, s, deg), tol);
    }
  }
}

TEST(AreaProduct, KnownValues) {
  const std::vector<double> one = {1.0};
  const std::vector<double> t1 = {1.0};
  EXPECT_NEAR(area_product_formula(one, t1).real(), 0.64805427366388540, 1e-15);
  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  const std::vector<double> t3 = {0.2, 0.9, 1.5};
  EXPECT_EQ(area_product_formula(zeros, t3), Complex(1.0, 0.0));
}

TEST(AreaProduct, AgreesWithNumericPipeline) {
  const std::vector<double> l = {1.0, 1.0};
  const std::vector<double> t = {0.5, 1.0};
  const ProblemSpec spec = levy_problem(t);
  FrequencyPoint pt = zero_point(spec);
  pt.lambdas = l;
  const Complex numeric = eval_joint_cf(spec, pt).value;
  EXPECT_LT(std::abs(area_product_formula(l, t) - numeric), 1e-6);
}

TEST(HClosed, IdentityAtZeroAndScalarWhenDegenerate) {
  const std::vector<double> l = {1.0, -1.0};
  const std::vector<double> t = {0.5, 1.0};
  const ScalarChain chain = scalar_chain(l, t);
  EXPECT_LT(norm_inf(h_closed(1, 0.0, chain) - CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(norm_inf(h_closed(2, 0.0, chain) - CMatrix::Identity(2, 2)), 1e-15);
  const CMatrix h = h_closed(1, 0.3, chain);
  const double s1 = chain.s_terminal[0];
  // degenerate: a_1(t) = ln((1 + s (t - t_1)) / (1 - s t_1))
  const double a = std::log((1.0 + s1 * (0.3 - 0.5)) / (1.0 - s1 * 0.5));
  EXPECT_LT(norm_inf(h - std::exp(a) * CMatrix::Identity(2, 2)), 1e-15);
}

TEST(HClosed, MatchesNumericTransport) {
  const std::vector<double> l = {1.0};
  const std::vector<double> t = {1.0};
  const ProblemSpec spec = levy_problem(t);
  FrequencyPoint pt = zero_point(spec);
  pt.lambdas = l;
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, pt, grid);
  const TransportPath tr = solve_transport(1, paths, spec, pt, grid);
  const ScalarChain chain = scalar_chain(l, t);
  EXPECT_LT(norm_inf(h_closed(1, 1.0, chain) - tr.h_samples.back()), 1e-6);
}

TEST(Levy2d, ReducesToAreaProductWithoutGammas) {
  const std::vector<double> l = {0.4, -1.1, 0.9};
  const std::vector<double> t = {0.3, 0.8, 1.6};
  const std::vector<RVector> g(3, RVector::Zero(2));
  const CFValue v = eval_joint_cf_2d(g, l, t);
  EXPECT_LT(std::abs(v.value - area_product_formula(l, t)), 1e-15);
}

TEST(Levy2d, ReducesToGaussianWithoutAreaFrequencies) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<double> l = {0.0, 0.0};
  const std::vector<double> t = {0.4, 1.1};
  std::vector<RVector> g(2, RVector(2));
  for (auto& v : g) v << u(rng), u(rng);
  const CFValue v = eval_joint_cf_2d(g, l, t);
  std::vector<Eigen::VectorXd> gg(g.begin(), g.end());
  std::vector<double> tt(t.begin(), t.end());
  EXPECT_NEAR(v.value.real(), oracle::gaussian_cf(gg, tt), 1e-10);
  EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
}

TEST(Levy2d, SingleTimeJointLaw) {
  for (double lambda : {-2.0, 0.3, 1.0}) {
    RVector g(2);
    g << 0.9, -0.4;
    const std::vector<RVector> gs = {g};
    const std::vector<double> l = {lambda};
    const std::vector<double> t = {1.2};
    const CFValue v = eval_joint_cf_2d(gs, l, t);
    EXPECT_NEAR(v.value.real(), oracle::levy_joint_single(g.squaredNorm(), lambda, 1.2),
                1e-10);
  }
}

TEST(Levy2d, TelescopedTraceMatchesRiccatiIntegrals) {
  const std::vector<double> l = {0.6, 1.2, -0.5};
  const std::vector<double> t = {0.5, 1.1, 1.8};
  const ProblemSpec spec = levy_problem(t);
  FrequencyPoint pt = zero_point(spec);
  pt.lambdas = l;
  const GlobalGrid grid = GlobalGrid::build(spec);
  const auto paths = solve_riccati_recursive(spec, pt, grid);
  const ScalarChain chain = scalar_chain(l, t);
  double numeric = 0.0;
  double closed = 0.0;
  for (int j = 1; j <= 3; ++j) {
    numeric += 0.5 * paths[j - 1].trace_integral.real();  // int_0^{t_j} k_j
    closed += a_eval(j, chain.times[j], chain) - a_eval(j, chain.times[j - 1], chain);
  }
  EXPECT_NEAR(numeric, closed, 1e-10);
}

TEST(Levy2d, AgreesWithNumericPipelineOnRandomInstances) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<double> t;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) t.push_back(acc += 0.2 + 0.6 * (u(rng) + 1.0));
    const ProblemSpec spec = levy_problem(t);
    FrequencyPoint pt = zero_point(spec);
    for (int k = 0; k < n; ++k) {
      pt.lambdas[k] = 2.0 * u(rng);
      pt.gammas[k] << u(rng), u(rng);
    }
    const Complex closed = eval_joint_cf_2d(spec, pt).value;
    const Complex numeric = eval_joint_cf(spec, pt).value;
    EXPECT_LE(std::abs(closed - numeric) / std::abs(closed), 1e-5);
  }
}

TEST(Levy2d, RejectsOtherShapes) {
  const ProblemSpec three{3, {1.0}, {RMatrix::Zero(3, 3)}};
  ProblemSpec mixed = levy_problem({0.5, 1.0});
  mixed.matrices[1] = -rotation();
  for (const auto& spec : {three, mixed}) {
    try {
      eval_joint_cf_2d(spec, zero_point(spec));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ShapeError);
    }
  }
  EXPECT_TRUE(is_levy2d(levy_problem({1.0, 2.0})));
  EXPECT_FALSE(is_levy2d(mixed));
}

}  // namespace
}  // namespace levyarea
