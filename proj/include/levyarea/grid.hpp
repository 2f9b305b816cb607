#pragma once

#include <optional>
#include <vector>

#include "levyarea/problem.hpp"

namespace levyarea {

// Piecewise-uniform grid over [0, t_n]. Every observation time is a node and
// each step carries its midpoint, so samples live on a "half grid" indexed
// 0..2*(node_count-1): even indices are nodes, odd indices are midpoints.
class GlobalGrid {
 public:
  static constexpr int kDefaultTotalSteps = 4096;
  static constexpr int kMinStepsPerInterval = 16;

  /// Target step is t_n / 4096 unless overridden; each interval
  /// [t_{j-1}, t_j] is split into max(16, ceil(gap / target)) equal steps.
  static GlobalGrid build(const ProblemSpec& spec,
                          std::optional<double> step_override = std::nullopt);

  int step_count() const { return static_cast<int>(nodes_.size()) - 1; }
  int half_count() const { return 2 * step_count() + 1; }

  double node(int k) const { return nodes_[k]; }
  double step(int k) const { return nodes_[k + 1] - nodes_[k]; }
  double max_step() const { return max_step_; }

  /// Position of half-grid sample idx.
  double point(int idx) const;

  /// Node index of t_j (j in [0, n]).
  int node_of(int j) const { return time_nodes_[j]; }
  int half_index_of(int j) const { return 2 * time_nodes_[j]; }

  /// Half-grid index of t; throws GridMiss when t is not a sample point.
  int half_index_at(double t) const;

 private:
  std::vector<double> nodes_;
  std::vector<int> time_nodes_;
  double max_step_ = 0.0;
};

}  // namespace levyarea
