// qsl command line front end. Parses state / density files, dispatches to the
// shared library through the C interface and emits JSON reports (CSV for the
// doublet sweep). Exit codes: 0 ok, 2 parse or flag error, 3 constraint
// violation, 4 horizon failure, 5 minorant violation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsl.h"

#include "file_formats.hpp"
#include "report_writer.hpp"

namespace {

using qslcli::Json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitConstraint = 3;
constexpr int kExitHorizon = 4;
constexpr int kExitMinorant = 5;

int exit_code_for(qsl_status status) {
  switch (status) {
    case QSL_OK: return kExitOk;
    case QSL_ERR_INVALID_ARGUMENT:
    case QSL_ERR_INVALID_RANGE:
    case QSL_ERR_GRID_TOO_COARSE: return kExitParse;
    case QSL_ERR_CONSTRAINT:
    case QSL_ERR_NOT_HERMITIAN:
    case QSL_ERR_NOT_PSD:
    case QSL_ERR_DIMENSION_MISMATCH: return kExitConstraint;
    case QSL_ERR_SINGLE_LEVEL:
    case QSL_ERR_INVALID_HORIZON: return kExitHorizon;
    case QSL_ERR_MINORANT_NOT_VERIFIED: return kExitMinorant;
    case QSL_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

struct Failure {
  int exit_code;
  std::string message;
};

void require_ok(qsl_status status, const std::string& context) {
  if (status != QSL_OK)
    throw Failure{exit_code_for(status), context + ": " + qsl_last_error()};
}

struct StateDeleter {
  void operator()(qsl_state* s) const { qsl_state_free(s); }
};
struct DensityDeleter {
  void operator()(qsl_density* d) const { qsl_density_free(d); }
};
struct SweepDeleter {
  void operator()(qsl_sweep* s) const { qsl_sweep_free(s); }
};
using StatePtr = std::unique_ptr<qsl_state, StateDeleter>;
using DensityPtr = std::unique_ptr<qsl_density, DensityDeleter>;
using SweepPtr = std::unique_ptr<qsl_sweep, SweepDeleter>;

StatePtr load_state(const std::string& path) {
  qslcli::ParsedState parsed;
  try {
    parsed = qslcli::parse_state_file(path);
  } catch (const qslcli::ParseError& e) {
    throw Failure{kExitParse, e.what()};
  }
  qsl_state* raw = nullptr;
  const double* ground = parsed.ground_energy ? &*parsed.ground_energy : nullptr;
  require_ok(qsl_state_create(parsed.energies.data(), parsed.amp_re.data(),
                              parsed.amp_im.data(), parsed.energies.size(), ground,
                              parsed.hbar, &raw),
             path);
  return StatePtr(raw);
}

DensityPtr load_density(const std::string& path) {
  qslcli::ParsedDensity parsed;
  try {
    parsed = qslcli::parse_density_file(path);
  } catch (const qslcli::ParseError& e) {
    throw Failure{kExitParse, e.what()};
  }
  qsl_density* raw = nullptr;
  const double* ground = parsed.ground_energy ? &*parsed.ground_energy : nullptr;
  require_ok(qsl_density_create(parsed.energies.size(), parsed.energies.data(),
                                parsed.entries_re.data(), parsed.entries_im.data(),
                                ground, parsed.hbar, &raw),
             path);
  return DensityPtr(raw);
}

const char* kind_name(qsl_bound_kind kind) {
  switch (kind) {
    case QSL_BOUND_MT: return "MT";
    case QSL_BOUND_ML: return "ML";
    case QSL_BOUND_ALPHA: return "ALPHA";
  }
  return "?";
}

Json json_bound(const qsl_bound_report& r) {
  Json j = Json::object();
  j["kind"] = kind_name(r.kind);
  if (r.kind != QSL_BOUND_MT) j["alpha"] = r.alpha;
  j["value"] = r.value;
  j["moment_used"] = r.moment_used;
  return j;
}

Json json_ortho(const qsl_ortho_result& r, double tolerance) {
  Json j = Json::object();
  j["t_first"] = r.t_first;
  j["residual"] = r.residual;
  j["reached"] = r.reached != 0;
  j["scan_horizon"] = r.scan_horizon;
  j["grid_points"] = static_cast<long long>(r.grid_points);
  j["tolerance"] = tolerance;
  return j;
}

Json json_sweep(const qsl_sweep* sweep) {
  Json j = Json::object();
  j["best_alpha"] = qsl_sweep_best_alpha(sweep);
  j["best_value"] = qsl_sweep_best_value(sweep);
  j["refined"] = qsl_sweep_refined(sweep) != 0;
  Json samples = Json::array();
  for (size_t i = 0; i < qsl_sweep_sample_count(sweep); ++i) {
    double alpha = 0, value = 0;
    qsl_sweep_sample(sweep, i, &alpha, &value);
    Json s = Json::object();
    s["alpha"] = alpha;
    s["value"] = value;
    samples.push_back(std::move(s));
  }
  j["samples"] = std::move(samples);
  return j;
}

Json json_state_inputs(const std::string& path, const qsl_state* state) {
  Json j = Json::object();
  j["file"] = path;
  j["hbar"] = qsl_state_hbar(state);
  j["ground_energy"] = qsl_state_ground_energy(state);
  j["levels"] = static_cast<long long>(qsl_state_level_count(state));
  return j;
}

Json dump_state(const qsl_state* state) {
  Json doc = Json::object();
  doc["hbar"] = qsl_state_hbar(state);
  doc["ground_energy"] = qsl_state_ground_energy(state);
  Json levels = Json::array();
  for (size_t i = 0; i < qsl_state_level_count(state); ++i) {
    double e = 0, re = 0, im = 0;
    qsl_state_level(state, i, &e, &re, &im);
    Json level = Json::object();
    level["energy"] = e;
    Json amp = Json::object();
    amp["re"] = re;
    amp["im"] = im;
    level["amplitude"] = std::move(amp);
    levels.push_back(std::move(level));
  }
  doc["levels"] = std::move(levels);
  return doc;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Failure{kExitParse, std::string(flag) + ": cannot parse '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{kExitParse, std::string(flag) + ": empty list"};
  return out;
}

std::pair<double, double> parse_complex_flag(const std::string& text,
                                             const char* flag) {
  const std::vector<double> parts = parse_double_list(text, flag);
  if (parts.size() == 1) return {parts[0], 0.0};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw Failure{kExitParse, std::string(flag) + ": expected re or re,im"};
}

void emit(const Json& doc, bool pretty) {
  std::string text = doc.dump(pretty);
  if (text.empty() || text.back() != '\n') text.push_back('\n');
  std::cout << text;
}

// ---- subcommands -----------------------------------------------------------

struct BoundsOptions {
  std::string state_path;
  std::string alpha_list;
  bool optimize = false;
  std::string sweep_range;
  int sweep_grid = 64;
  bool dump = false;
};

int run_bounds(const BoundsOptions& opt, bool pretty) {
  const StatePtr state = load_state(opt.state_path);
  if (opt.dump) {
    emit(dump_state(state.get()), pretty);
    return kExitOk;
  }

  Json doc = Json::object();
  doc["inputs"] = json_state_inputs(opt.state_path, state.get());

  Json bounds = Json::object();
  qsl_bound_report mt{}, ml{};
  require_ok(qsl_mt_bound(state.get(), &mt), "mt bound");
  require_ok(qsl_ml_bound(state.get(), &ml), "ml bound");
  bounds["mt"] = json_bound(mt);
  bounds["ml"] = json_bound(ml);

  if (!opt.alpha_list.empty()) {
    Json alphas = Json::array();
    for (double alpha : parse_double_list(opt.alpha_list, "--alpha-list")) {
      qsl_bound_report r{};
      require_ok(qsl_alpha_bound(state.get(), alpha, &r), "alpha bound");
      alphas.push_back(json_bound(r));
    }
    bounds["alpha"] = std::move(alphas);
  }
  doc["bounds"] = std::move(bounds);

  if (opt.optimize) {
    double lo = 0.05, hi = 20.0;
    if (!opt.sweep_range.empty()) {
      const std::vector<double> range =
          parse_double_list(opt.sweep_range, "--sweep-range");
      if (range.size() != 2)
        throw Failure{kExitParse, "--sweep-range: expected min,max"};
      lo = range[0];
      hi = range[1];
    }
    qsl_sweep* raw = nullptr;
    require_ok(qsl_sweep_alpha(state.get(), lo, hi, opt.sweep_grid, &raw),
               "alpha sweep");
    const SweepPtr sweep(raw);
    doc["sweep"] = json_sweep(sweep.get());
  }

  emit(doc, pretty);
  return kExitOk;
}

struct T1Options {
  std::string state_path;
  double t_max = 0.0;  // 0 = infer
  long grid = 0;       // 0 = recommend
  double tol = 1e-9;
};

int run_t1(const T1Options& opt, bool pretty) {
  const StatePtr state = load_state(opt.state_path);

  double t_max = opt.t_max;
  Json horizon_json;
  if (t_max <= 0.0) {
    qsl_horizon horizon{};
    const qsl_status status = qsl_default_horizon(state.get(), &horizon);
    if (status != QSL_OK)
      throw Failure{kExitHorizon,
                    std::string("cannot infer a scan horizon (") + qsl_last_error() +
                        "); pass --t-max explicitly"};
    t_max = horizon.t_max;
    Json h = Json::object();
    h["t_max"] = horizon.t_max;
    h["periodic"] = horizon.periodic != 0;
    if (horizon.periodic) h["gap_divisor"] = horizon.gap_divisor;
    horizon_json = std::move(h);
  }

  long grid = opt.grid;
  if (grid <= 0)
    require_ok(qsl_recommended_grid_points(state.get(), t_max, &grid), "grid");

  qsl_ortho_result t1{};
  require_ok(qsl_orthogonalization_time(state.get(), t_max, grid, opt.tol, &t1),
             "orthogonalization time");

  qsl_bound_report mt{}, ml{};
  require_ok(qsl_mt_bound(state.get(), &mt), "mt bound");
  require_ok(qsl_ml_bound(state.get(), &ml), "ml bound");
  qsl_sweep* raw = nullptr;
  require_ok(qsl_sweep_alpha(state.get(), 0.05, 20.0, 64, &raw), "alpha sweep");
  const SweepPtr sweep(raw);
  const double best_value = qsl_sweep_best_value(sweep.get());

  Json doc = Json::object();
  doc["inputs"] = json_state_inputs(opt.state_path, state.get());
  if (horizon_json.dump(false) != "null") doc["inferred_horizon"] = std::move(horizon_json);
  doc["t1"] = json_ortho(t1, opt.tol);

  Json bounds = Json::object();
  bounds["mt"] = json_bound(mt);
  bounds["ml"] = json_bound(ml);
  Json best = Json::object();
  best["alpha"] = qsl_sweep_best_alpha(sweep.get());
  best["value"] = best_value;
  bounds["alpha_best"] = std::move(best);
  doc["bounds"] = std::move(bounds);

  Json soundness = Json::object();
  soundness["checked"] = t1.reached != 0;
  if (t1.reached) {
    const double cap = t1.t_first + 1e-6;
    bool holds = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (double v : {mt.value, ml.value, best_value}) {
      if (!std::isfinite(v)) continue;
      holds = holds && v <= cap;
      min_margin = std::min(min_margin, t1.t_first - v);
    }
    soundness["holds"] = holds;
    soundness["min_margin"] = min_margin;
  }
  doc["soundness"] = std::move(soundness);

  emit(doc, pretty);
  return kExitOk;
}

struct MinorantOptions {
  double alpha = 0.0;
  double x_max = 50.0;
  long samples = 100000;
};

int run_verify_minorant(const MinorantOptions& opt, bool pretty) {
  qsl_minorant_certificate cert{};
  require_ok(qsl_verify_alpha_minorant(opt.alpha, opt.x_max, opt.samples, &cert),
             "verify minorant");

  Json doc = Json::object();
  Json inputs = Json::object();
  inputs["alpha"] = opt.alpha;
  inputs["x_max"] = opt.x_max;
  inputs["samples"] = static_cast<long long>(opt.samples);
  doc["inputs"] = std::move(inputs);

  Json c = Json::object();
  c["alpha"] = cert.alpha;
  c["sin_coeff"] = cert.sin_coeff;
  c["cos_coeff"] = cert.cos_coeff;
  c["offset"] = cert.offset;
  c["x_max"] = cert.x_max;
  c["samples"] = static_cast<long long>(cert.samples);
  c["min_value"] = cert.min_value;
  c["min_location"] = cert.min_location;
  c["verified"] = cert.verified != 0;
  Json certs = Json::array();
  certs.push_back(std::move(c));
  doc["certificates"] = std::move(certs);

  emit(doc, pretty);
  if (!cert.verified) {
    std::cerr << "minorant violated at x = " << cert.min_location
              << " (residual " << cert.min_value << ")\n";
    return kExitMinorant;
  }
  return kExitOk;
}

struct DoubletOptions {
  long long n = 0;
  std::string lambda = "1";
  double epsilon = 1.0;
  double hbar = 1.0;
  std::string sweep_n;
  std::string csv_out;
};

int run_example_doublet(const DoubletOptions& opt, bool pretty) {
  const auto [lambda_re, lambda_im] = parse_complex_flag(opt.lambda, "--lambda");

  if (!opt.sweep_n.empty()) {
    const std::vector<double> ns = parse_double_list(opt.sweep_n, "--sweep-n");
    std::string csv = "n,t1,mt,ml,alpha_half,alpha_best,best_alpha\n";
    char row[512];
    for (double nd : ns) {
      const long long n = static_cast<long long>(nd);
      qsl_comparison rep{};
      require_ok(qsl_doublet_report(n, lambda_re, lambda_im, opt.epsilon, opt.hbar,
                                    &rep, nullptr),
                 "doublet report");
      std::snprintf(row, sizeof row,
                    "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, rep.t1.t_first,
                    rep.mt.value, rep.ml.value, rep.alpha_half.value, rep.best_value,
                    rep.best_alpha);
      csv += row;
    }
    if (opt.csv_out.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(opt.csv_out);
      if (!out) throw Failure{kExitParse, "cannot write " + opt.csv_out};
      out << csv;
    }
    return kExitOk;
  }

  qsl_comparison rep{};
  qsl_sweep* raw = nullptr;
  require_ok(qsl_doublet_report(opt.n, lambda_re, lambda_im, opt.epsilon, opt.hbar,
                                &rep, &raw),
             "doublet report");
  const SweepPtr sweep(raw);

  Json doc = Json::object();
  Json inputs = Json::object();
  inputs["n"] = opt.n;
  Json lambda = Json::object();
  lambda["re"] = lambda_re;
  lambda["im"] = lambda_im;
  inputs["lambda"] = std::move(lambda);
  inputs["epsilon"] = opt.epsilon;
  inputs["hbar"] = opt.hbar;
  doc["inputs"] = std::move(inputs);

  Json bounds = Json::object();
  bounds["mt"] = json_bound(rep.mt);
  bounds["ml"] = json_bound(rep.ml);
  bounds["alpha_half"] = json_bound(rep.alpha_half);
  doc["bounds"] = std::move(bounds);
  doc["sweep"] = json_sweep(sweep.get());
  if (rep.t1_present) doc["t1"] = json_ortho(rep.t1, 1e-9);

  Json winner = Json::object();
  winner["kind"] = kind_name(rep.winner);
  if (rep.winner == QSL_BOUND_ALPHA) winner["alpha"] = rep.winner_alpha;
  doc["winner"] = std::move(winner);

  emit(doc, pretty);
  return kExitOk;
}

struct MixedOptions {
  std::string density_path;
  std::optional<double> time;
  std::optional<long> uhlmann_samples;
  double t_max = 0.0;
  unsigned long long seed = 12345;
};

int run_mixed(const MixedOptions& opt, bool pretty) {
  if (opt.time.has_value() == opt.uhlmann_samples.has_value())
    throw Failure{kExitParse, "pass exactly one of --time and --uhlmann-samples"};
  if (opt.uhlmann_samples && *opt.uhlmann_samples < 1)
    throw Failure{kExitParse, "--uhlmann-samples: need at least one sample"};

  const DensityPtr density = load_density(opt.density_path);

  Json doc = Json::object();
  Json inputs = Json::object();
  inputs["file"] = opt.density_path;
  inputs["dim"] = static_cast<long long>(qsl_density_dim(density.get()));
  doc["inputs"] = std::move(inputs);

  if (opt.time) {
    double fidelity = 0, overlap_sq = 0;
    int holds = 0;
    require_ok(qsl_uhlmann_check(density.get(), *opt.time, &fidelity, &overlap_sq,
                                 &holds),
               "uhlmann check");
    doc["time"] = *opt.time;
    doc["fidelity"] = fidelity;
    doc["overlap_sq"] = overlap_sq;
    doc["holds"] = holds != 0;
    emit(doc, pretty);
    return kExitOk;
  }

  double horizon = opt.t_max;
  if (horizon <= 0.0) {
    qsl_horizon h{};
    const qsl_status status = qsl_density_horizon(density.get(), &h);
    if (status != QSL_OK)
      throw Failure{kExitHorizon,
                    std::string("cannot infer a time horizon (") + qsl_last_error() +
                        "); pass --t-max explicitly"};
    horizon = h.t_max;
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> dist(0.0, horizon);
  double min_margin = std::numeric_limits<double>::infinity();
  double min_margin_time = 0.0;
  bool holds_all = true;
  for (long i = 0; i < *opt.uhlmann_samples; ++i) {
    const double t = dist(rng);
    double fidelity = 0, overlap_sq = 0;
    int holds = 0;
    require_ok(qsl_uhlmann_check(density.get(), t, &fidelity, &overlap_sq, &holds),
               "uhlmann check");
    holds_all = holds_all && holds != 0;
    const double margin = fidelity - overlap_sq;
    if (margin < min_margin) {
      min_margin = margin;
      min_margin_time = t;
    }
  }
  doc["samples"] = static_cast<long long>(*opt.uhlmann_samples);
  doc["horizon"] = horizon;
  doc["seed"] = static_cast<long long>(opt.seed);
  doc["min_margin"] = min_margin;
  doc["min_margin_time"] = min_margin_time;
  doc["holds_all"] = holds_all;
  emit(doc, pretty);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum speed-limit bounds and orthogonalization times"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON report");

  BoundsOptions bounds_opt;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Mandelstam-Tamm, Margolus-Levitin and alpha-family bounds");
  bounds->add_option("state", bounds_opt.state_path, "state file (JSON)")->required();
  bounds->add_option("--alpha-list", bounds_opt.alpha_list,
                     "comma-separated alpha exponents");
  bounds->add_flag("--optimize", bounds_opt.optimize,
                   "sweep alpha and refine the best bound");
  bounds->add_option("--sweep-range", bounds_opt.sweep_range,
                     "alpha sweep range min,max (default 0.05,20)");
  bounds->add_option("--sweep-grid", bounds_opt.sweep_grid,
                     "alpha sweep grid points (default 64)");
  bounds->add_flag("--dump", bounds_opt.dump,
                   "re-emit the parsed state as a canonical state file");

  T1Options t1_opt;
  CLI::App* t1 = app.add_subcommand(
      "t1", "first orthogonalization time of the survival amplitude");
  t1->add_option("state", t1_opt.state_path, "state file (JSON)")->required();
  t1->add_option("--t-max", t1_opt.t_max,
                 "scan horizon (default: recurrence period or heuristic)");
  t1->add_option("--grid", t1_opt.grid,
                 "grid points (default: sampling rule for the horizon)");
  t1->add_option("--tol", t1_opt.tol, "orthogonality tolerance on |A| (default 1e-9)");

  MinorantOptions minorant_opt;
  CLI::App* minorant = app.add_subcommand(
      "verify-minorant", "grid-verify the power-trigonometric minorant inequality");
  minorant->add_option("--alpha", minorant_opt.alpha, "exponent alpha > 0")->required();
  minorant->add_option("--x-max", minorant_opt.x_max, "scan range (default 50)");
  minorant->add_option("--samples", minorant_opt.samples,
                       "grid samples (default 100000)");

  DoubletOptions doublet_opt;
  CLI::App* doublet = app.add_subcommand(
      "example-doublet", "bounds vs t1 for the four-level doublet family");
  doublet->add_option("--n", doublet_opt.n, "level ratio n >= 2")->required();
  doublet->add_option("--lambda", doublet_opt.lambda,
                      "high-pair weight parameter, re or re,im (default 1)");
  doublet->add_option("--epsilon", doublet_opt.epsilon, "doublet gap (default 1)");
  doublet->add_option("--hbar", doublet_opt.hbar, "hbar (default 1)");
  doublet->add_option("--sweep-n", doublet_opt.sweep_n,
                      "emit CSV rows for these n values instead of a report");
  doublet->add_option("--csv-out", doublet_opt.csv_out,
                      "write the CSV to a file instead of stdout");

  MixedOptions mixed_opt;
  CLI::App* mixed = app.add_subcommand(
      "mixed", "Uhlmann fidelity bound check for a density matrix");
  mixed->add_option("density", mixed_opt.density_path, "density file (JSON)")
      ->required();
  double mixed_time = 0.0;
  CLI::Option* time_opt =
      mixed->add_option("--time", mixed_time, "evaluate F(rho, rho(t)) at this t");
  long mixed_samples = 0;
  CLI::Option* samples_opt = mixed->add_option(
      "--uhlmann-samples", mixed_samples, "check k random times over the horizon");
  mixed->add_option("--t-max", mixed_opt.t_max, "horizon for random sampling");
  mixed->add_option("--seed", mixed_opt.seed, "random seed (default 12345)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (bounds->parsed()) return run_bounds(bounds_opt, pretty);
    if (t1->parsed()) return run_t1(t1_opt, pretty);
    if (minorant->parsed()) return run_verify_minorant(minorant_opt, pretty);
    if (doublet->parsed()) return run_example_doublet(doublet_opt, pretty);
    if (mixed->parsed()) {
      if (time_opt->count()) mixed_opt.time = mixed_time;
      if (samples_opt->count()) mixed_opt.uhlmann_samples = mixed_samples;
      return run_mixed(mixed_opt, pretty);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitParse;
}
