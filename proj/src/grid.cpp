#include "levyarea/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyarea/error.hpp"

namespace levyarea {

GlobalGrid GlobalGrid::build(const ProblemSpec& spec,
                             std::optional<double> step_override) {
  validate(spec);
  const double horizon = spec.times.back();
  double target = horizon / kDefaultTotalSteps;
  if (step_override) {
    if (!(*step_override > 0.0) || !std::isfinite(*step_override)) {
      throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
    }
    target = *step_override;
  }

  GlobalGrid grid;
  grid.nodes_.push_back(0.0);
  grid.time_nodes_.push_back(0);
  for (int j = 1; j <= spec.n(); ++j) {
    const double lo = spec.time(j - 1);
    const double hi = spec.time(j);
    const double gap = hi - lo;
    const int steps = std::max(kMinStepsPerInterval,
                               static_cast<int>(std::ceil(gap / target - 1e-9)));
    for (int k = 1; k < steps; ++k) {
      grid.nodes_.push_back(lo + gap * static_cast<double>(k) / steps);
    }
    grid.nodes_.push_back(hi);
    grid.time_nodes_.push_back(static_cast<int>(grid.nodes_.size()) - 1);
    grid.max_step_ = std::max(grid.max_step_, gap / steps);
  }
  return grid;
}

double GlobalGrid::point(int idx) const {
  const int k = idx / 2;
  if (idx % 2 == 0) return nodes_[k];
  return 0.5 * (nodes_[k] + nodes_[k + 1]);
}

int GlobalGrid::half_index_at(double t) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - 1e-12);
  if (it != nodes_.end()) {
    const int k = static_cast<int>(it - nodes_.begin());
    if (std::abs(nodes_[k] - t) <= 1e-12) return 2 * k;
    if (k > 0 && std::abs(point(2 * k - 1) - t) <= 1e-12) return 2 * k - 1;
  }
  std::ostringstream os;
  os.precision(17);
  os << "time " << t << " is not a node or midpoint of the integration grid";
  throw Error(ErrorKind::GridMiss, os.str());
}

}  // namespace levyarea
