#include "levyarea/levyarea.h"

#include <exception>
#include <memory>
#include <optional>
#include <string>

#include "levyarea/cf_engine.hpp"
#include "levyarea/error.hpp"
#include "levyarea/levy2d.hpp"
#include "levyarea/mc_oracle.hpp"

using namespace levyarea;

struct levy_problem {
  ProblemSpec spec;
};

struct levy_point {
  FrequencyPoint pt;
  int d = 0;
};

struct levy_result {
  CFValue cf;
  std::optional<MCEstimate> estimate;
};

struct levy_samples {
  SampleSet set;
  SimulationConfig config;
};

namespace {

thread_local std::string last_error;

levy_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return LEVY_ERR_INVALID_ARGUMENT;
    case ErrorKind::NonIncreasingTimes:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NonFiniteInput:
    case ErrorKind::EmptyProblem: return LEVY_ERR_VALIDATION;
    case ErrorKind::ShapeError: return LEVY_ERR_SHAPE;
    case ErrorKind::SingularMatrix: return LEVY_ERR_SINGULAR;
    case ErrorKind::GridMiss: return LEVY_ERR_GRID_MISS;
    case ErrorKind::BlowUp: return LEVY_ERR_BLOWUP;
    case ErrorKind::IllConditioned: return LEVY_ERR_ILL_CONDITIONED;
    case ErrorKind::PoleEncountered: return LEVY_ERR_POLE;
  }
  return LEVY_ERR_INTERNAL;
}

template <typename F>
levy_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return LEVY_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return LEVY_ERR_INTERNAL;
  }
}

levy_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return LEVY_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* levy_version(void) { return "0.1.0"; }

const char* levy_last_error(void) { return last_error.c_str(); }

const char* levy_status_name(levy_status status) {
  switch (status) {
    case LEVY_OK: return "ok";
    case LEVY_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LEVY_ERR_VALIDATION: return "validation error";
    case LEVY_ERR_BLOWUP: return "blow-up";
    case LEVY_ERR_ILL_CONDITIONED: return "ill-conditioned";
    case LEVY_ERR_POLE: return "pole encountered";
    case LEVY_ERR_SINGULAR: return "singular matrix";
    case LEVY_ERR_GRID_MISS: return "grid miss";
    case LEVY_ERR_SHAPE: return "shape error";
    case LEVY_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

levy_status levy_problem_create(int d, int n, const double* times,
                                const double* matrices, levy_problem** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  if (n > 0 && (!times || !matrices)) return null_argument("times/matrices");
  if (d < 1 || n < 0) {
    last_error = "dimension must be >= 1 and count >= 0";
    return n < 0 ? LEVY_ERR_INVALID_ARGUMENT : LEVY_ERR_VALIDATION;
  }
  return guarded([&] {
    ProblemSpec spec;
    spec.d = d;
    spec.times.assign(times, times + n);
    for (int k = 0; k < n; ++k) {
      spec.matrices.emplace_back(
          Eigen::Map<const RMatrix>(matrices + k * d * d, d, d));
    }
    validate(spec);
    *out = new levy_problem{std::move(spec)};
  });
}

void levy_problem_destroy(levy_problem* problem) { delete problem; }

int levy_problem_dimension(const levy_problem* problem) {
  return problem ? problem->spec.d : 0;
}

int levy_problem_count(const levy_problem* problem) {
  return problem ? problem->spec.n() : 0;
}

levy_status levy_point_create(int d, int n, const double* gammas,
                              const double* lambdas, levy_mode mode,
                              levy_point** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  if (n > 0 && (!gammas || !lambdas)) return null_argument("gammas/lambdas");
  if (d < 1 || n < 0) {
    last_error = "dimension must be >= 1 and count >= 0";
    return LEVY_ERR_INVALID_ARGUMENT;
  }
  if (mode != LEVY_MODE_CHARACTERISTIC && mode != LEVY_MODE_MGF) {
    last_error = "unknown mode";
    return LEVY_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto point = std::make_unique<levy_point>();
    point->d = d;
    point->pt.mode = mode == LEVY_MODE_MGF ? Mode::Mgf : Mode::Characteristic;
    for (int k = 0; k < n; ++k) {
      point->pt.gammas.emplace_back(
          Eigen::Map<const RVector>(gammas + k * d, d));
    }
    point->pt.lambdas.assign(lambdas, lambdas + n);
    *out = point.release();
  });
}

void levy_point_destroy(levy_point* point) { delete point; }

levy_status levy_point_set_lambda(levy_point* point, int j, double value) {
  if (!point) return null_argument("point");
  if (j < 1 || j > static_cast<int>(point->pt.lambdas.size())) {
    last_error = "lambda index " + std::to_string(j) + " out of range";
    return LEVY_ERR_INVALID_ARGUMENT;
  }
  point->pt.lambdas[j - 1] = value;
  return LEVY_OK;
}

levy_status levy_evaluate(const levy_problem* problem, const levy_point* point,
                          double grid_step, levy_result** out) {
  if (!problem || !point || !out) return null_argument("problem/point/out");
  *out = nullptr;
  return guarded([&] {
    EvalConfig config;
    if (grid_step > 0.0) config.grid_step_override = grid_step;
    *out = new levy_result{evaluate(problem->spec, point->pt, config), {}};
  });
}

levy_status levy_evaluate_closed2d(const levy_problem* problem,
                                   const levy_point* point,
                                   levy_result** out) {
  if (!problem || !point || !out) return null_argument("problem/point/out");
  *out = nullptr;
  return guarded([&] {
    *out = new levy_result{eval_joint_cf_2d(problem->spec, point->pt), {}};
  });
}

levy_status levy_simulate(const levy_problem* problem, uint64_t n_paths,
                          int steps_per_unit, uint64_t seed,
                          levy_samples** out) {
  if (!problem || !out) return null_argument("problem/out");
  *out = nullptr;
  return guarded([&] {
    SimulationConfig config;
    config.n_paths = n_paths;
    config.steps_per_unit = steps_per_unit;
    config.seed = seed;
    *out = new levy_samples{simulate_paths(problem->spec, config), config};
  });
}

void levy_samples_destroy(levy_samples* samples) { delete samples; }

levy_status levy_estimate(const levy_samples* samples, const levy_point* point,
                          levy_result** out) {
  if (!samples || !point || !out) return null_argument("samples/point/out");
  *out = nullptr;
  return guarded([&] {
    const MCEstimate est = empirical_cf(samples->set, point->pt, samples->config);
    auto result = std::make_unique<levy_result>();
    result->cf.value = est.mean;
    result->cf.log_value = std::log(est.mean);
    result->estimate = est;
    *out = result.release();
  });
}

void levy_result_destroy(levy_result* result) { delete result; }

void levy_result_value(const levy_result* result, double* re, double* im) {
  if (!result) return;
  if (re) *re = result->cf.value.real();
  if (im) *im = result->cf.value.imag();
}

void levy_result_log_value(const levy_result* result, double* re, double* im) {
  if (!result) return;
  if (re) *re = result->cf.log_value.real();
  if (im) *im = result->cf.log_value.imag();
}

int levy_result_factor_count(const levy_result* result) {
  return result ? static_cast<int>(result->cf.factors.size()) : 0;
}

levy_status levy_result_factor(const levy_result* result, int j, double* trace,
                               double* quadratic) {
  if (!result) return null_argument("result");
  if (j < 1 || j > static_cast<int>(result->cf.factors.size())) {
    last_error = "factor index " + std::to_string(j) + " out of range";
    return LEVY_ERR_INVALID_ARGUMENT;
  }
  const FactorRecord& f = result->cf.factors[j - 1];
  if (trace) {
    trace[0] = f.trace_integral.real();
    trace[1] = f.trace_integral.imag();
  }
  if (quadratic) {
    quadratic[0] = f.quadratic_integral.real();
    quadratic[1] = f.quadratic_integral.imag();
  }
  return LEVY_OK;
}

double levy_result_grid_step(const levy_result* result) {
  return result ? result->cf.diagnostics.grid_step : 0.0;
}

double levy_result_max_k_norm(const levy_result* result) {
  return result ? result->cf.diagnostics.max_k_norm : 0.0;
}

int levy_result_warning_count(const levy_result* result) {
  return result ? static_cast<int>(result->cf.diagnostics.warnings.size()) : 0;
}

const char* levy_result_warning(const levy_result* result, int i) {
  if (!result || i < 0 ||
      i >= static_cast<int>(result->cf.diagnostics.warnings.size())) {
    return nullptr;
  }
  return result->cf.diagnostics.warnings[i].c_str();
}

int levy_result_is_estimate(const levy_result* result) {
  return result && result->estimate ? 1 : 0;
}

void levy_result_std_error(const levy_result* result, double* re, double* im) {
  const bool has = result && result->estimate;
  if (re) *re = has ? result->estimate->std_error_re : 0.0;
  if (im) *im = has ? result->estimate->std_error_im : 0.0;
}

uint64_t levy_result_paths(const levy_result* result) {
  return result && result->estimate ? result->estimate->n_paths : 0;
}

levy_status levy_compare(double ref_re, double ref_im, double est_re,
                         double est_im, double se_re, double se_im,
                         double threshold, double allowance,
                         levy_compare_report* out) {
  if (!out) return null_argument("out");
  if (se_re < 0.0 || se_im < 0.0 || threshold < 0.0 || allowance < 0.0) {
    last_error = "standard errors, threshold and allowance must be >= 0";
    return LEVY_ERR_INVALID_ARGUMENT;
  }
  const CompareReport r = compare(Complex(ref_re, ref_im), Complex(est_re, est_im),
                                  se_re, se_im, threshold, allowance);
  *out = levy_compare_report{r.diff_re, r.diff_im, r.z_re, r.z_im, r.pass ? 1 : 0};
  last_error.clear();
  return LEVY_OK;
}

}  // extern "C"
