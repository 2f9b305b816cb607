// levyarea: command-line front end over the C interface.
//
// Exit codes: 0 success, 1 other failure (I/O, failed compare verdict,
// internal error), 2 invalid input, 3 Riccati blow-up, 4 numerical
// conditioning (ill-conditioned transport, pole, singular matrix).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "levyarea/levyarea.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitConditioning = 4;

// Raised for anything wrong with the user's input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LibraryError : public std::runtime_error {
 public:
  LibraryError(levy_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  levy_status status() const { return status_; }

 private:
  levy_status status_;
};

int exit_code_for(levy_status status) {
  switch (status) {
    case LEVY_OK: return kExitOk;
    case LEVY_ERR_INVALID_ARGUMENT:
    case LEVY_ERR_VALIDATION:
    case LEVY_ERR_SHAPE: return kExitInvalid;
    case LEVY_ERR_BLOWUP: return kExitBlowUp;
    case LEVY_ERR_ILL_CONDITIONED:
    case LEVY_ERR_POLE:
    case LEVY_ERR_SINGULAR: return kExitConditioning;
    default: return kExitFailure;
  }
}

void check(levy_status status) {
  if (status != LEVY_OK) {
    throw LibraryError(status, std::string(levy_status_name(status)) + ": " +
                                   levy_last_error());
  }
}

struct HandleDeleter {
  void operator()(levy_problem* p) const { levy_problem_destroy(p); }
  void operator()(levy_point* p) const { levy_point_destroy(p); }
  void operator()(levy_result* p) const { levy_result_destroy(p); }
  void operator()(levy_samples* p) const { levy_samples_destroy(p); }
};
template <typename T>
using Handle = std::unique_ptr<T, HandleDeleter>;

// ---------------------------------------------------------------------------
// Problem files

struct ProblemInput {
  int d = 0;
  std::vector<double> times;
  std::vector<double> matrices;  // n row-major d*d blocks
  std::vector<double> gammas;    // n blocks of d
  std::vector<double> lambdas;
  levy_mode mode = LEVY_MODE_CHARACTERISTIC;
  std::string digest;

  int n() const { return static_cast<int>(times.size()); }
};

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

const json& array_at(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  return v;
}

const json& member(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array_at(v, where).size(); ++i) {
    out.push_back(number_at(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Accepts either d rows of d numbers or a flat list of d*d numbers.
std::vector<double> matrix_entries(const json& v, int d, const std::string& where) {
  array_at(v, where);
  std::vector<double> out;
  if (!v.empty() && v[0].is_array()) {
    if (v.size() != static_cast<std::size_t>(d)) {
      throw InputError(where + ": expected " + std::to_string(d) + " rows");
    }
    for (int r = 0; r < d; ++r) {
      const std::string row_where = where + "[" + std::to_string(r) + "]";
      const std::vector<double> row = numbers(v[r], row_where);
      if (row.size() != static_cast<std::size_t>(d)) {
        throw InputError(row_where + ": expected " + std::to_string(d) + " entries");
      }
      out.insert(out.end(), row.begin(), row.end());
    }
  } else {
    out = numbers(v, where);
    if (out.size() != static_cast<std::size_t>(d) * d) {
      throw InputError(where + ": expected " + std::to_string(d * d) + " entries");
    }
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

ProblemInput load_problem(const std::string& path) {
  const json doc = read_json(path);
  if (!doc.is_object()) throw InputError(path + ": expected a JSON object");

  ProblemInput p;
  const json& d = member(doc, "d");
  if (!d.is_number_integer() || d.get<long long>() < 1) {
    throw InputError("d: expected a positive integer");
  }
  p.d = d.get<int>();
  p.times = numbers(member(doc, "times"), "times");
  const std::size_t n = p.times.size();

  const json& mats = array_at(member(doc, "matrices"), "matrices");
  const json& gams = array_at(member(doc, "gammas"), "gammas");
  p.lambdas = numbers(member(doc, "lambdas"), "lambdas");
  if (mats.size() != n) throw InputError("matrices: expected one matrix per time");
  if (gams.size() != n) throw InputError("gammas: expected one vector per time");
  if (p.lambdas.size() != n) throw InputError("lambdas: expected one value per time");
  for (std::size_t k = 0; k < n; ++k) {
    const std::string idx = "[" + std::to_string(k) + "]";
    const std::vector<double> m = matrix_entries(mats[k], p.d, "matrices" + idx);
    p.matrices.insert(p.matrices.end(), m.begin(), m.end());
    const std::vector<double> g = numbers(gams[k], "gammas" + idx);
    if (g.size() != static_cast<std::size_t>(p.d)) {
      throw InputError("gammas" + idx + ": expected " + std::to_string(p.d) + " entries");
    }
    p.gammas.insert(p.gammas.end(), g.begin(), g.end());
  }

  std::string mode = "characteristic";
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (!it->is_string()) throw InputError("mode: expected a string");
    mode = it->get<std::string>();
  }
  if (mode == "characteristic") {
    p.mode = LEVY_MODE_CHARACTERISTIC;
  } else if (mode == "mgf") {
    p.mode = LEVY_MODE_MGF;
  } else {
    throw InputError("mode: expected \"characteristic\" or \"mgf\", got \"" + mode + "\"");
  }

  // The digest covers the parsed content in a canonical form (sorted keys,
  // flat matrices, floating-point numbers), so formatting does not matter.
  const json canonical = {{"d", p.d},          {"times", p.times},
                          {"matrices", p.matrices}, {"gammas", p.gammas},
                          {"lambdas", p.lambdas},   {"mode", mode}};
  p.digest = "sha256:" + sha256_hex(canonical.dump());
  return p;
}

Handle<levy_problem> make_problem(const ProblemInput& p) {
  levy_problem* raw = nullptr;
  check(levy_problem_create(p.d, p.n(), p.times.data(), p.matrices.data(), &raw));
  return Handle<levy_problem>(raw);
}

Handle<levy_point> make_point(const ProblemInput& p) {
  levy_point* raw = nullptr;
  check(levy_point_create(p.d, p.n(), p.gammas.data(), p.lambdas.data(), p.mode, &raw));
  return Handle<levy_point>(raw);
}

// ---------------------------------------------------------------------------
// Result files

json complex_json(double re, double im) { return {{"re", re}, {"im", im}}; }

json result_json(const char* kind, const ProblemInput& p, const levy_result* r) {
  double re = 0.0, im = 0.0;
  json out;
  out["tool"] = "levyarea";
  out["version"] = levy_version();
  out["kind"] = kind;
  out["input_digest"] = p.digest;
  out["mode"] = p.mode == LEVY_MODE_MGF ? "mgf" : "characteristic";
  levy_result_value(r, &re, &im);
  out["value"] = complex_json(re, im);
  levy_result_log_value(r, &re, &im);
  out["log_value"] = complex_json(re, im);

  json factors = json::array();
  for (int j = 1; j <= levy_result_factor_count(r); ++j) {
    double trace[2], quad[2];
    check(levy_result_factor(r, j, trace, quad));
    factors.push_back({{"j", j},
                       {"trace_integral", complex_json(trace[0], trace[1])},
                       {"quadratic_integral", complex_json(quad[0], quad[1])}});
  }
  out["factors"] = std::move(factors);

  json warnings = json::array();
  for (int i = 0; i < levy_result_warning_count(r); ++i) {
    warnings.push_back(levy_result_warning(r, i));
  }
  out["diagnostics"] = {{"grid_step", levy_result_grid_step(r)},
                        {"max_k_norm", levy_result_max_k_norm(r)},
                        {"warnings", std::move(warnings)}};
  if (levy_result_is_estimate(r)) {
    levy_result_std_error(r, &re, &im);
    out["std_error"] = complex_json(re, im);
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path + "'");
}

void emit_json(const json& doc, const std::string& path) { emit(doc.dump(2) + "\n", path); }

// Shortest decimal form that round-trips.
std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double resolve_grid_step(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0.0) || !std::isfinite(*flag)) {
      throw InputError("--grid-step: expected a positive number");
    }
    return *flag;
  }
  const char* env = std::getenv("CF_GRID_STEP");
  if (!env || !*env) return 0.0;
  double value = 0.0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto r = std::from_chars(env, end, value);
  if (r.ec != std::errc() || r.ptr != end || !(value > 0.0) || !std::isfinite(value)) {
    throw InputError(std::string("CF_GRID_STEP: expected a positive number, got '") +
                     env + "'");
  }
  return value;
}

// ---------------------------------------------------------------------------
// Commands

struct CommonArgs {
  std::string problem;
  std::string out;
  std::optional<double> grid_step;
};

void cmd_eval(const CommonArgs& a) {
  const double step = resolve_grid_step(a.grid_step);
  const ProblemInput p = load_problem(a.problem);
  auto problem = make_problem(p);
  auto point = make_point(p);
  levy_result* raw = nullptr;
  check(levy_evaluate(problem.get(), point.get(), step, &raw));
  Handle<levy_result> result(raw);
  emit_json(result_json("eval", p, result.get()), a.out);
}

void cmd_closed2d(const CommonArgs& a) {
  const ProblemInput p = load_problem(a.problem);
  auto problem = make_problem(p);
  auto point = make_point(p);
  levy_result* raw = nullptr;
  check(levy_evaluate_closed2d(problem.get(), point.get(), &raw));
  Handle<levy_result> result(raw);
  emit_json(result_json("closed2d", p, result.get()), a.out);
}

struct McArgs {
  std::uint64_t paths = 100000;
  int steps_per_unit = 4096;
  std::uint64_t seed = 0;
};

void cmd_mc(const CommonArgs& a, const McArgs& m) {
  const ProblemInput p = load_problem(a.problem);
  auto problem = make_problem(p);
  auto point = make_point(p);
  levy_samples* raw_samples = nullptr;
  check(levy_simulate(problem.get(), m.paths, m.steps_per_unit, m.seed, &raw_samples));
  Handle<levy_samples> samples(raw_samples);
  levy_result* raw = nullptr;
  check(levy_estimate(samples.get(), point.get(), &raw));
  Handle<levy_result> result(raw);
  json doc = result_json("mc", p, result.get());
  doc["monte_carlo"] = {{"paths", m.paths},
                        {"steps_per_unit", m.steps_per_unit},
                        {"seed", m.seed}};
  emit_json(doc, a.out);
}

struct CompareArgs {
  std::string a;
  std::string b;
  std::string out;
  double threshold = 4.0;
  std::optional<double> allowance;
  double tolerance = 1e-6;
};

struct ResultView {
  std::string kind;
  std::string digest;
  double re = 0.0, im = 0.0;
  double se_re = 0.0, se_im = 0.0;
  bool estimate = false;
};

ResultView load_result(const std::string& path) {
  const json doc = read_json(path);
  if (!doc.is_object()) throw InputError(path + ": expected a JSON object");
  ResultView v;
  const json& kind = member(doc, "kind");
  const json& digest = member(doc, "input_digest");
  if (!kind.is_string() || !digest.is_string()) {
    throw InputError(path + ": kind and input_digest must be strings");
  }
  v.kind = kind.get<std::string>();
  v.digest = digest.get<std::string>();
  const json& value = member(doc, "value");
  v.re = number_at(member(value, "re"), path + ": value.re");
  v.im = number_at(member(value, "im"), path + ": value.im");
  if (auto it = doc.find("std_error"); it != doc.end()) {
    v.estimate = true;
    v.se_re = number_at(member(*it, "re"), path + ": std_error.re");
    v.se_im = number_at(member(*it, "im"), path + ": std_error.im");
  }
  return v;
}

json z_json(double z) { return std::isfinite(z) ? json(z) : json(nullptr); }

bool cmd_compare(const CompareArgs& c) {
  const ResultView a = load_result(c.a);
  const ResultView b = load_result(c.b);
  if (a.digest != b.digest) {
    throw InputError("problem digests differ: " + a.digest + " vs " + b.digest);
  }
  // Deterministic results are compared with a plain tolerance; once a Monte
  // Carlo estimate is involved the allowance covers its discretisation bias.
  const bool stochastic = a.estimate || b.estimate;
  const double allowance = c.allowance ? *c.allowance : (stochastic ? 0.005 : c.tolerance);
  const double se_re = std::hypot(a.se_re, b.se_re);
  const double se_im = std::hypot(a.se_im, b.se_im);
  levy_compare_report r;
  check(levy_compare(a.re, a.im, b.re, b.im, se_re, se_im, c.threshold, allowance, &r));

  json doc;
  doc["tool"] = "levyarea";
  doc["version"] = levy_version();
  doc["kind"] = "compare";
  doc["input_digest"] = a.digest;
  doc["a"] = {{"kind", a.kind}, {"value", complex_json(a.re, a.im)}};
  doc["b"] = {{"kind", b.kind}, {"value", complex_json(b.re, b.im)}};
  doc["diff"] = complex_json(r.diff_re, r.diff_im);
  doc["std_error"] = complex_json(se_re, se_im);
  doc["z"] = {{"re", z_json(r.z_re)}, {"im", z_json(r.z_im)}};
  doc["threshold"] = c.threshold;
  doc["allowance"] = allowance;
  doc["pass"] = r.pass != 0;
  emit_json(doc, c.out);
  return r.pass != 0;
}

struct SweepArgs {
  std::string problem;
  std::string csv;
  std::optional<double> grid_step;
  int lambda_index = 1;
  double from = 0.0;
  double to = 0.0;
  int points = 61;
};

void cmd_sweep(const SweepArgs& s) {
  const double step = resolve_grid_step(s.grid_step);
  const ProblemInput p = load_problem(s.problem);
  if (s.lambda_index < 1 || s.lambda_index > p.n()) {
    throw InputError("--lambda-index: expected a value in [1, " + std::to_string(p.n()) +
                     "]");
  }
  if (s.points < 1) throw InputError("--points: expected at least 1");
  if (!std::isfinite(s.from) || !std::isfinite(s.to)) {
    throw InputError("--from/--to: expected finite numbers");
  }
  auto problem = make_problem(p);
  auto point = make_point(p);
  std::ostringstream csv;
  csv << "lambda,re,im,abs\n";
  for (int k = 0; k < s.points; ++k) {
    const double lambda =
        s.points == 1 ? s.from : s.from + (s.to - s.from) * k / (s.points - 1);
    check(levy_point_set_lambda(point.get(), s.lambda_index, lambda));
    levy_result* raw = nullptr;
    check(levy_evaluate(problem.get(), point.get(), step, &raw));
    Handle<levy_result> result(raw);
    double re = 0.0, im = 0.0;
    levy_result_value(result.get(), &re, &im);
    csv << format_double(lambda) << ',' << format_double(re) << ','
        << format_double(im) << ',' << format_double(std::hypot(re, im)) << '\n';
  }
  emit(csv.str(), s.csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint characteristic functions of Brownian motion and generalised Levy areas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(levy_version()));

  CommonArgs common;
  McArgs mc;
  CompareArgs cmp;
  SweepArgs sweep;

  auto* eval = app.add_subcommand("eval", "Evaluate through the Riccati system");
  eval->add_option("problem", common.problem, "Problem file (JSON)")->required();
  eval->add_option("--grid-step", common.grid_step, "Target step (overrides CF_GRID_STEP)");
  eval->add_option("--out", common.out, "Write the result here instead of stdout");

  auto* closed = app.add_subcommand("closed2d", "Closed form for 2D Levy areas");
  closed->add_option("problem", common.problem, "Problem file (JSON)")->required();
  closed->add_option("--out", common.out, "Write the result here instead of stdout");

  auto* sim = app.add_subcommand("mc", "Monte Carlo estimate");
  sim->add_option("problem", common.problem, "Problem file (JSON)")->required();
  sim->add_option("--paths", mc.paths, "Number of paths")->capture_default_str();
  sim->add_option("--steps-per-unit", mc.steps_per_unit, "Euler steps per unit time")
      ->capture_default_str();
  sim->add_option("--seed", mc.seed, "Random seed")->capture_default_str();
  sim->add_option("--out", common.out, "Write the result here instead of stdout");

  auto* comp = app.add_subcommand("compare", "Compare two result files");
  comp->add_option("a", cmp.a, "Reference result")->required();
  comp->add_option("b", cmp.b, "Result or Monte Carlo estimate")->required();
  comp->add_option("--threshold", cmp.threshold, "Allowed multiple of the standard error")
      ->capture_default_str();
  comp->add_option("--allowance", cmp.allowance,
                   "Absolute slack per part (default 0.005 with an estimate)");
  comp->add_option("--tolerance", cmp.tolerance,
                   "Absolute slack when neither side is an estimate")
      ->capture_default_str();
  comp->add_option("--out", cmp.out, "Write the report here instead of stdout");

  auto* sw = app.add_subcommand("sweep", "Tabulate f over one area frequency");
  sw->add_option("problem", sweep.problem, "Problem file (JSON)")->required();
  sw->add_option("--lambda-index", sweep.lambda_index, "1-based index of the swept frequency")
      ->capture_default_str();
  sw->add_option("--from", sweep.from, "First frequency")->required();
  sw->add_option("--to", sweep.to, "Last frequency")->required();
  sw->add_option("--points", sweep.points, "Number of rows")->capture_default_str();
  sw->add_option("--grid-step", sweep.grid_step, "Target step (overrides CF_GRID_STEP)");
  sw->add_option("--csv", sweep.csv, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*eval) cmd_eval(common);
    if (*closed) cmd_closed2d(common);
    if (*sim) cmd_mc(common, mc);
    if (*sw) cmd_sweep(sweep);
    if (*comp && !cmd_compare(cmp)) {
      std::cerr << "levyarea: compare failed\n";
      return kExitFailure;
    }
  } catch (const InputError& e) {
    std::cerr << "levyarea: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const LibraryError& e) {
    std::cerr << "levyarea: " << e.what() << '\n';
    return exit_code_for(e.status());
  } catch (const std::exception& e) {
    std::cerr << "levyarea: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
