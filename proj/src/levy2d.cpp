#include "levyarea/levy2d.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "levyarea/error.hpp"

namespace levyarea {

namespace {

constexpr double kPoleThreshold = 1e-14;

[[noreturn]] void pole(const std::string& where, double value) {
  std::ostringstream os;
  os << where << ": denominator " << value << " vanishes";
  throw Error(ErrorKind::PoleEncountered, os.str());
}

// c cosh(c x) + s sinh(c x), or 1 + s x when c is degenerate.
double hyperbolic_denominator(double c, double s, double x, bool degenerate) {
  return degenerate ? 1.0 + s * x
                    : c * std::cosh(c * x) + s * std::sinh(c * x);
}

// Solution of s' = c^2 - s^2 at offset x = t - t_j from terminal value s.
double scalar_solution(double c, double s, double x, bool degenerate) {
  const double den = hyperbolic_denominator(c, s, x, degenerate);
  if (std::abs(den) < kPoleThreshold) pole("s_j(t)", den);
  if (degenerate) return s / den;
  return c * (c * std::sinh(c * x) + s * std::cosh(c * x)) / den;
}

double log_ratio(double num, double den, const char* where) {
  const double ratio = num / den;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) pole(where, den);
  return std::log(ratio);
}

void require_increasing(std::span<const double> times) {
  double prev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > prev)) {
      throw Error(ErrorKind::NonIncreasingTimes,
                  "times[" + std::to_string(k + 1) + "] is not increasing");
    }
    prev = times[k];
  }
}

Complex adaptive_simpson(const std::function<Complex(double)>& f, double a,
                         double b, Complex fa, Complex fm, Complex fb,
                         Complex whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Complex flm = f(lm);
  const Complex frm = f(rm);
  const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Complex delta = left + right - whole;
  if (depth <= 0 || (depth < 46 && std::abs(delta) <= 15.0 * tol)) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  double tol) {
  const Complex fa = f(a);
  const Complex fm = f(0.5 * (a + b));
  const Complex fb = f(b);
  const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

ScalarChain scalar_chain(std::span<const double> lambdas,
                         std::span<const double> times) {
  if (lambdas.size() != times.size() || times.empty()) {
    throw Error(ErrorKind::DimensionMismatch,
                "scalar_chain: need matching, non-empty lambdas and times");
  }
  require_increasing(times);
  const int n = static_cast<int>(times.size());
  ScalarChain chain;
  chain.times.assign(1, 0.0);
  chain.times.insert(chain.times.end(), times.begin(), times.end());
  chain.c.assign(n, 0.0);
  chain.s_terminal.assign(n, 0.0);
  chain.degenerate.assign(n, false);

  double sum = 0.0;
  for (int j = n; j >= 1; --j) {
    sum += lambdas[j - 1];
    chain.c[j - 1] = sum;
    chain.degenerate[j - 1] = std::abs(sum) < kDegenerateThreshold;
  }
  for (int j = n - 1; j >= 1; --j) {
    chain.s_terminal[j - 1] = scalar_solution(
        chain.c[j], chain.s_terminal[j], chain.times[j] - chain.times[j + 1],
        chain.degenerate[j]);
  }
  return chain;
}

double ScalarChain::s_at(int j, double t) const {
  return scalar_solution(c[j - 1], s_terminal[j - 1], t - times[j],
                         degenerate[j - 1]);
}

double a_eval(int j, double t, const ScalarChain& chain) {
  const double c = chain.c[j - 1];
  const double s = chain.s_terminal[j - 1];
  const bool deg = chain.degenerate[j - 1];
  const double tj = chain.times[j];
  return log_ratio(hyperbolic_denominator(c, s, t - tj, deg),
                   hyperbolic_denominator(c, s, -tj, deg), "a_j(t)");
}

CMatrix h_closed(int j, double t, const ScalarChain& chain) {
  const double c = chain.c[j - 1];
  const double scale = std::exp(a_eval(j, t, chain));
  const double ch = std::cosh(c * t);
  const double sh = std::sinh(c * t);
  CMatrix h(2, 2);
  h << Complex{ch, 0.0}, Complex{0.0, -sh}, Complex{0.0, sh}, Complex{ch, 0.0};
  return scale * h;
}

namespace {

// log of the j-th hyperbolic factor, i.e. a_j(t_j) - a_j(t_{j-1}).
double log_area_factor(int j, const ScalarChain& chain) {
  const double c = chain.c[j - 1];
  const double s = chain.s_terminal[j - 1];
  const bool deg = chain.degenerate[j - 1];
  const double x = chain.times[j - 1] - chain.times[j];
  return log_ratio(deg ? 1.0 : c, hyperbolic_denominator(c, s, x, deg),
                   "area factor");
}

}  // namespace

Complex area_product_formula(std::span<const double> lambdas,
                             std::span<const double> times) {
  const ScalarChain chain = scalar_chain(lambdas, times);
  double log_sum = 0.0;
  for (int j = 1; j <= chain.n(); ++j) log_sum += log_area_factor(j, chain);
  return Complex{std::exp(log_sum), 0.0};
}

bool is_levy2d(const ProblemSpec& spec) {
  if (spec.d != 2) return false;
  RMatrix gen(2, 2);
  gen << 0.0, -1.0, 1.0, 0.0;
  for (const auto& a : spec.matrices) {
    if (a.rows() != 2 || a.cols() != 2 || a != gen) return false;
  }
  return true;
}

CFValue eval_joint_cf_2d(std::span<const RVector> gammas,
                         std::span<const double> lambdas,
                         std::span<const double> times) {
  const ScalarChain chain = scalar_chain(lambdas, times);
  const int n = chain.n();
  if (static_cast<int>(gammas.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "expected one gamma per time");
  }
  for (const auto& g : gammas) {
    if (g.size() != 2) {
      throw Error(ErrorKind::ShapeError, "closed form requires d = 2");
    }
  }

  std::vector<CVector> mu(n);
  mu[n - 1] = to_complex(gammas[n - 1]);
  for (int j = n - 1; j >= 1; --j) {
    const CMatrix inv = mat_inverse(h_closed(j + 1, chain.times[j], chain));
    const CMatrix end = h_closed(j + 1, chain.times[j + 1], chain);
    mu[j - 1] = to_complex(gammas[j - 1]) +
                inv.transpose() * (end.transpose() * mu[j]);
  }

  std::vector<FactorRecord> factors(n);
  for (int j = 1; j <= n; ++j) {
    const CVector v = h_closed(j, chain.times[j], chain).transpose() * mu[j - 1];
    auto integrand = [&](double s) {
      return bilinear_square(mat_inverse(h_closed(j, s, chain)).transpose() * v);
    };
    factors[j - 1].trace_integral = 2.0 * log_area_factor(j, chain);
    factors[j - 1].quadratic_integral =
        (v.squaredNorm() == 0.0)
            ? Complex{0.0, 0.0}
            : integrate(integrand, chain.times[j - 1], chain.times[j], 1e-10);
  }
  return assemble_cf(std::move(factors), Diagnostics{});
}

CFValue eval_joint_cf_2d(const ProblemSpec& spec, const FrequencyPoint& pt) {
  validate(spec, pt);
  if (!is_levy2d(spec)) {
    throw Error(ErrorKind::ShapeError,
                "closed form requires d = 2 and every matrix equal to "
                "[[0, -1], [1, 0]]");
  }
  if (pt.mode != Mode::Characteristic) {
    throw Error(ErrorKind::InvalidArgument,
                "closed form is only available in characteristic mode");
  }
  return eval_joint_cf_2d(pt.gammas, pt.lambdas, spec.times);
}

}  // namespace levyarea
