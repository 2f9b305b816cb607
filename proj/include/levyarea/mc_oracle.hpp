#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levyarea/problem.hpp"

namespace levyarea {

struct PathSample {
  std::vector<RVector> w;     // W_{t_k}
  std::vector<double> areas;  // L^{A_k}_{t_k}
};

struct SimulationConfig {
  std::uint64_t n_paths = 100000;
  int steps_per_unit = 4096;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
};

/// Simulated (W_{t_k}, L^{A_k}_{t_k}) for all paths, stored flat.
class SampleSet {
 public:
  SampleSet(int d, int n, std::uint64_t n_paths);

  int d() const { return d_; }
  int n() const { return n_; }
  std::uint64_t size() const { return n_paths_; }

  std::span<double> w(std::uint64_t p, int k);
  std::span<const double> w(std::uint64_t p, int k) const;
  double& area(std::uint64_t p, int k) { return areas_[p * n_ + k]; }
  double area(std::uint64_t p, int k) const { return areas_[p * n_ + k]; }

  PathSample sample(std::uint64_t p) const;

 private:
  int d_;
  int n_;
  std::uint64_t n_paths_;
  std::vector<double> w_;
  std::vector<double> areas_;
};

/// Euler grid with ceil(gap * steps_per_unit) equal steps per observation
/// interval, exact Gaussian increments and left-point Ito sums for every
/// area. Path p draws from its own stream keyed by (seed, p), so the output
/// does not depend on thread scheduling.
SampleSet simulate_paths(const ProblemSpec& spec,
                         const SimulationConfig& config);

struct MCEstimate {
  Complex mean;
  double std_error = 0.0;  // max of the two parts
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::uint64_t n_paths = 0;
  int steps_per_unit = 0;
  std::uint64_t seed = 0;
};

MCEstimate empirical_cf(const SampleSet& samples, const FrequencyPoint& pt,
                        const SimulationConfig& config);

struct CompareReport {
  double diff_re = 0.0;
  double diff_im = 0.0;
  double z_re = 0.0;  // |diff| / std_error; +inf when std_error is 0
  double z_im = 0.0;
  double threshold = 4.0;
  double allowance = 0.005;
  bool pass = false;
};

/// Pass iff each part satisfies |diff| <= threshold * se + allowance.
CompareReport compare(Complex reference, Complex estimate, double se_re,
                      double se_im, double threshold = 4.0,
                      double allowance = 0.005);
CompareReport compare(const CFValue& reference, const MCEstimate& estimate,
                      double threshold = 4.0, double allowance = 0.005);

}  // namespace levyarea
