#include "levyarea/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "levyarea/error.hpp"

namespace levyarea {

SampleSet::SampleSet(int d, int n, std::uint64_t n_paths)
    : d_(d),
      n_(n),
      n_paths_(n_paths),
      w_(n_paths * n * d, 0.0),
      areas_(n_paths * n, 0.0) {}

std::span<double> SampleSet::w(std::uint64_t p, int k) {
  return {w_.data() + (p * n_ + k) * d_, static_cast<std::size_t>(d_)};
}

std::span<const double> SampleSet::w(std::uint64_t p, int k) const {
  return {w_.data() + (p * n_ + k) * d_, static_cast<std::size_t>(d_)};
}

PathSample SampleSet::sample(std::uint64_t p) const {
  PathSample out;
  for (int k = 0; k < n_; ++k) {
    const auto wk = w(p, k);
    out.w.emplace_back(Eigen::Map<const RVector>(wk.data(), d_));
    out.areas.push_back(area(p, k));
  }
  return out;
}

namespace {

struct SimulationPlan {
  int d = 0;
  std::vector<int> steps;         // Euler steps per observation interval
  std::vector<double> root_dt;    // sqrt of the step length per interval
  std::vector<RMatrix> distinct;  // distinct area matrices
  std::vector<int> matrix_of;     // observation k -> distinct matrix index
  std::vector<int> last_use;      // distinct matrix -> last observation using it
};

SimulationPlan make_plan(const ProblemSpec& spec, int steps_per_unit) {
  SimulationPlan plan;
  plan.d = spec.d;
  for (int k = 1; k <= spec.n(); ++k) {
    const double gap = spec.time(k) - spec.time(k - 1);
    const int m = std::max(
        1, static_cast<int>(std::ceil(gap * steps_per_unit - 1e-9)));
    plan.steps.push_back(m);
    plan.root_dt.push_back(std::sqrt(gap / m));

    const RMatrix& a = spec.matrices[k - 1];
    const auto it = std::find(plan.distinct.begin(), plan.distinct.end(), a);
    if (it == plan.distinct.end()) {
      plan.distinct.push_back(a);
      plan.last_use.push_back(k - 1);
      plan.matrix_of.push_back(static_cast<int>(plan.distinct.size()) - 1);
    } else {
      const int u = static_cast<int>(it - plan.distinct.begin());
      plan.matrix_of.push_back(u);
      plan.last_use[u] = k - 1;
    }
  }
  return plan;
}

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path),
                    static_cast<std::uint32_t>(path >> 32)};
  return std::mt19937_64(seq);
}

// kDim > 0 fixes the dimension at compile time so the small loops unroll;
// kDim == 0 handles any d.
template <int kDim>
void simulate_range(const SimulationPlan& plan, std::uint64_t seed,
                    std::uint64_t begin, std::uint64_t end, SampleSet& out) {
  const int d = kDim > 0 ? kDim : plan.d;
  const int n_obs = static_cast<int>(plan.steps.size());
  const int n_mat = static_cast<int>(plan.distinct.size());

  // Flat row-major copies and, per interval, the matrices still accumulating.
  std::vector<double> flat(static_cast<std::size_t>(n_mat) * d * d);
  for (int u = 0; u < n_mat; ++u) {
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) flat[(u * d + r) * d + c] = plan.distinct[u](r, c);
    }
  }
  std::vector<std::vector<int>> active(n_obs);
  for (int k = 0; k < n_obs; ++k) {
    for (int u = 0; u < n_mat; ++u) {
      if (plan.last_use[u] >= k) active[k].push_back(u);
    }
  }

  std::vector<double> w(d), dw(d), acc(n_mat);
  boost::random::normal_distribution<double> normal;

  for (std::uint64_t p = begin; p < end; ++p) {
    auto engine = path_engine(seed, p);
    normal.reset();
    std::fill(w.begin(), w.end(), 0.0);
    std::fill(acc.begin(), acc.end(), 0.0);

    for (int k = 0; k < n_obs; ++k) {
      const double root_dt = plan.root_dt[k];
      const std::vector<int>& live = active[k];
      for (int step = 0; step < plan.steps[k]; ++step) {
        for (int i = 0; i < d; ++i) dw[i] = root_dt * normal(engine);
        for (const int u : live) {
          const double* a = flat.data() + static_cast<std::size_t>(u) * d * d;
          double inc = 0.0;
          for (int r = 0; r < d; ++r) {
            double row = 0.0;
            for (int c = 0; c < d; ++c) row += a[r * d + c] * w[c];
            inc += row * dw[r];
          }
          acc[u] += inc;
        }
        for (int i = 0; i < d; ++i) w[i] += dw[i];
      }
      auto wk = out.w(p, k);
      std::copy(w.begin(), w.end(), wk.begin());
      out.area(p, k) = acc[plan.matrix_of[k]];
    }
  }
}

void simulate_dispatch(const SimulationPlan& plan, std::uint64_t seed,
                       std::uint64_t begin, std::uint64_t end,
                       SampleSet& out) {
  switch (plan.d) {
    case 2: simulate_range<2>(plan, seed, begin, end, out); break;
    case 3: simulate_range<3>(plan, seed, begin, end, out); break;
    case 4: simulate_range<4>(plan, seed, begin, end, out); break;
    default: simulate_range<0>(plan, seed, begin, end, out); break;
  }
}

}  // namespace

SampleSet simulate_paths(const ProblemSpec& spec,
                         const SimulationConfig& config) {
  validate(spec);
  if (config.n_paths == 0) {
    throw Error(ErrorKind::InvalidArgument, "n_paths must be positive");
  }
  if (config.steps_per_unit < 64) {
    throw Error(ErrorKind::InvalidArgument, "steps_per_unit must be >= 64");
  }
  const SimulationPlan plan = make_plan(spec, config.steps_per_unit);
  SampleSet out(spec.d, spec.n(), config.n_paths);

  unsigned threads = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, config.n_paths));
  if (threads <= 1) {
    simulate_dispatch(plan, config.seed, 0, config.n_paths, out);
    return out;
  }
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (config.n_paths + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = std::min(config.n_paths, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back(simulate_dispatch, std::cref(plan), config.seed, begin,
                         end, std::ref(out));
  }
  for (auto& worker : workers) worker.join();
  return out;
}

MCEstimate empirical_cf(const SampleSet& samples, const FrequencyPoint& pt,
                        const SimulationConfig& config) {
  const int n = samples.n();
  const int d = samples.d();
  if (static_cast<int>(pt.gammas.size()) != n ||
      static_cast<int>(pt.lambdas.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "frequency point does not match the simulated problem");
  }
  for (const auto& g : pt.gammas) {
    if (g.size() != d) {
      throw Error(ErrorKind::DimensionMismatch, "gamma has wrong length");
    }
  }

  const std::uint64_t count = samples.size();
  std::vector<Complex> values(count);
  for (std::uint64_t p = 0; p < count; ++p) {
    double phase = 0.0;
    double growth = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto wk = samples.w(p, k);
      for (int i = 0; i < d; ++i) phase += pt.gammas[k][i] * wk[i];
      if (pt.mode == Mode::Characteristic) {
        phase += pt.lambdas[k] * samples.area(p, k);
      } else {
        growth += pt.lambdas[k] * samples.area(p, k);
      }
    }
    values[p] = std::exp(Complex{growth, phase});
  }

  Complex sum{0.0, 0.0};
  for (const auto& v : values) sum += v;
  const Complex mean = sum / static_cast<double>(count);
  double ss_re = 0.0;
  double ss_im = 0.0;
  for (const auto& v : values) {
    ss_re += (v.real() - mean.real()) * (v.real() - mean.real());
    ss_im += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
  }

  MCEstimate est;
  est.mean = mean;
  if (count > 1) {
    const double denom = static_cast<double>(count - 1) * count;
    est.std_error_re = std::sqrt(ss_re / denom);
    est.std_error_im = std::sqrt(ss_im / denom);
  }
  est.std_error = std::max(est.std_error_re, est.std_error_im);
  est.n_paths = count;
  est.steps_per_unit = config.steps_per_unit;
  est.seed = config.seed;
  return est;
}

namespace {

double z_score(double diff, double se) {
  if (se > 0.0) return std::abs(diff) / se;
  return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

CompareReport compare(Complex reference, Complex estimate, double se_re,
                      double se_im, double threshold, double allowance) {
  CompareReport report;
  report.diff_re = reference.real() - estimate.real();
  report.diff_im = reference.imag() - estimate.imag();
  report.z_re = z_score(report.diff_re, se_re);
  report.z_im = z_score(report.diff_im, se_im);
  report.threshold = threshold;
  report.allowance = allowance;
  report.pass = std::abs(report.diff_re) <= threshold * se_re + allowance &&
                std::abs(report.diff_im) <= threshold * se_im + allowance;
  return report;
}

CompareReport compare(const CFValue& reference, const MCEstimate& estimate,
                      double threshold, double allowance) {
  return compare(reference.value, estimate.mean, estimate.std_error_re,
                 estimate.std_error_im, threshold, allowance);
}

}  // namespace levyarea
