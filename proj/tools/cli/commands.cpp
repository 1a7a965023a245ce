#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv_io.hpp"
#include "fcpp/estimators.hpp"
#include "fcpp/format.hpp"
#include "fcpp/mixture.hpp"
#include "fcpp/pot.hpp"
#include "fcpp/simulate.hpp"

namespace fcpp::cli {
namespace {

using json = nlohmann::ordered_json;

// Writes to `fallback` when path is empty or "-", otherwise to the file.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback), path_(path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw IoError("cannot open '" + path + "' for writing");
      }
      stream_ = file_.get();
    }
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) {
      throw IoError("write failed" + (path_.empty() ? std::string() : " for '" + path_ + "'"));
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_;
};

EventSeries read_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  return read_event_csv(in);
}

json to_json(const FcppParams& p) {
  return {{"beta", p.beta}, {"theta", p.theta}, {"sigma", p.sigma}};
}

void check_frac(double frac) {
  if (!(frac > 0.0 && frac < 1.0)) {
    throw DomainError("--frac must lie in (0, 1), got " + format_number(frac));
  }
}

void check_lower_bound(double a) {
  if (!(a > 0.0 && a <= 0.5)) {
    throw DomainError("--lower-bound must lie in (0, 0.5], got " + format_number(a));
  }
}

// Flag values are user input, not file content: a malformed one is a usage
// error rather than a parse error.
template <class F>
auto flag_value(const char* flag, F&& parse) {
  try {
    return parse();
  } catch (const ParseError& e) {
    throw DomainError(std::string(flag) + ": " + e.what());
  }
}

// Inserts `--key=value` for every config-file key whose flag is not already
// on the command line, directly after the subcommand name. Command-line flags
// therefore override the file, which overrides the built-in defaults.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  std::set<std::string> present;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      continue;
    }
    const auto eq = a.find('=');
    const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    present.insert(name);
    if (name == "config") {
      if (eq != std::string::npos) {
        path = a.substr(eq + 1);
      } else if (i + 1 < args.size()) {
        path = args[i + 1];
      }
    }
  }
  if (!path) {
    return args;
  }
  std::ifstream in(*path);
  if (!in) {
    throw IoError("cannot open config file '" + *path + "'");
  }
  const auto entries = read_config(in);
  std::vector<std::string> extra;
  for (const auto& [key, value] : entries) {
    if (key == "config") {
      throw ParseError("config files cannot include other config files");
    }
    if (!present.contains(key)) {
      extra.push_back("--" + key + "=" + value);
    }
  }
  std::vector<std::string> merged = args;
  const std::size_t at = !args.empty() && args[0].rfind("-", 0) != 0 ? 1 : 0;
  merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return merged;
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  std::string input;
  std::string output;
  double frac = 0.02;
  std::optional<double> threshold;
  double lower_bound = 0.1;
  std::string family = "fcpp";
  std::string estimator = "cmmod";
};

void cmd_fit(const FitOptions& o, std::ostream& out) {
  check_frac(o.frac);
  check_lower_bound(o.lower_bound);
  const ModelFamily family = flag_value("--family", [&] { return parse_family(o.family); });
  const EstimatorKind estimator =
      flag_value("--estimator", [&] { return parse_estimator(o.estimator); });
  const EventSeries series = read_series(o.input);
  const double u = o.threshold ? *o.threshold : threshold_from_fraction(series, o.frac);
  const IetSample s = extract_iets(series, u);

  json report;
  json diagnostics;
  FcppParams params;
  double rho = 0.0;
  json distance = nullptr;
  std::string model;
  switch (estimator) {
    case EstimatorKind::kCmmod: {
      const FitResult f = fit_cmmod(s, o.lower_bound, family);
      params = f.params;
      rho = f.rho;
      distance = f.distance;
      model = to_string(family);
      json starts = json::array();
      for (const StartDiagnostics& d : f.starts) {
        starts.push_back({{"start", to_json(d.start)},
                          {"end", to_json(d.end)},
                          {"distance", d.distance},
                          {"iterations", d.iterations},
                          {"evaluations", d.evaluations},
                          {"converged", d.converged},
                          {"message", d.message}});
      }
      diagnostics = {{"starts", starts}, {"best_start", f.best_start}};
      break;
    }
    case EstimatorKind::kInterval: {
      const IntervalEstimate f = interval_estimator(s);
      params = {1.0, f.theta, f.sigma};
      rho = f.rho;
      model = to_string(ModelFamily::kCpp);
      diagnostics = {{"branch", f.tail_branch ? "some IET > 2" : "all IETs <= 2"}};
      break;
    }
    case EstimatorKind::kLogMoment: {
      const LogMomentEstimate f = log_moment_estimator(s);
      params = {f.beta, 1.0, f.sigma};
      rho = normalised_scale(f.sigma, f.beta, s.p_hat);
      model = to_string(ModelFamily::kFpp);
      diagnostics = json::object();
      break;
    }
    case EstimatorKind::kMle: {
      const MleEstimate f = ml_mle(s);
      params = {f.beta, 1.0, f.sigma};
      rho = normalised_scale(f.sigma, f.beta, s.p_hat);
      model = to_string(ModelFamily::kFpp);
      diagnostics = {{"log_likelihood", f.log_likelihood},
                     {"start_log_likelihood", f.start_log_likelihood},
                     {"iterations", f.iterations},
                     {"converged", f.converged}};
      break;
    }
  }
  json p = to_json(params);
  p["rho"] = rho;
  report["model"] = model;
  report["estimator"] = to_string(estimator);
  report["params"] = p;
  report["distance"] = distance;
  report["k"] = s.k();
  report["n_star"] = s.n_star;
  report["p_hat"] = s.p_hat;
  report["threshold"] = u;
  report["n_events"] = series.size();
  report["lower_bound"] = o.lower_bound;
  report["diagnostics"] = diagnostics;

  Output dst(o.output, out);
  dst.stream() << report.dump(2) << '\n';
  dst.finish();
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string output;
  std::uint64_t seed = 0;
  double theta = 1.0;
  std::string waiting = "exponential";
  std::size_t n = 10000;
  std::uint64_t replicate = 0;
};

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const WaitingLaw law = flag_value("--waiting", [&] { return parse_waiting_law(o.waiting); });
  const ScenarioSpec spec{o.theta, law, o.n, o.seed, 0.02};
  const EventSeries s = build_series(spec, o.replicate);
  Output dst(o.output, out);
  write_event_csv(dst.stream(), s);
  dst.finish();
}

// ---------------------------------------------------------------- study

struct StudyOptions {
  std::string output;
  std::string json_path;
  std::uint64_t seed = 0;
  std::size_t replicates = 100;
  std::size_t jobs = 1;
  std::vector<std::string> estimators = {"cmmod"};
  std::vector<std::string> scenarios;
  std::string grid;
  std::size_t n = 10000;
  double frac = 0.02;
  double lower_bound = 0.1;
  std::string family = "fcpp";
  bool timing = false;
};

json study_json(const StudyResult& r) {
  const StudyConfig& c = r.config;
  json scenarios = json::array();
  for (const Scenario& s : c.scenarios) scenarios.push_back(s.name());
  json estimators = json::array();
  for (EstimatorKind e : c.estimators) estimators.push_back(to_string(e));
  json cells = json::array();
  for (const CellSummary& cell : r.cells) {
    cells.push_back({{"scenario", c.scenarios[cell.scenario].name()},
                     {"estimator", to_string(cell.estimator)},
                     {"parameter", to_string(cell.parameter)},
                     {"true_value", cell.true_value},
                     {"bias", cell.bias},
                     {"rmse", cell.rmse},
                     {"rmse_std_error", cell.rmse_std_error},
                     {"mean_abs_error", cell.mean_abs_error},
                     {"mae_std_error", cell.mae_std_error},
                     {"n_replicates", cell.n_replicates},
                     {"n_failures", cell.n_failures},
                     {"mean_seconds", cell.mean_seconds}});
  }
  json estimates = json::array();
  for (const ReplicateEstimate& e : r.estimates) {
    json row = {{"scenario", c.scenarios[e.scenario].name()},
                {"replicate", e.replicate},
                {"estimator", to_string(e.estimator)},
                {"ok", e.ok}};
    for (Parameter p : parameters_of(e.estimator)) row[to_string(p)] = e.value(p);
    if (!e.ok) row["error"] = e.error;
    if (c.record_timing) row["seconds"] = e.seconds;
    estimates.push_back(row);
  }
  // The worker count is left out on purpose: it does not affect results.
  return {{"config",
           {{"seed", c.seed},
            {"replicates", c.replicates},
            {"estimators", estimators},
            {"lower_bound", c.lower_bound},
            {"family", to_string(c.family)},
            {"scenarios", scenarios}}},
          {"cells", cells},
          {"estimates", estimates}};
}

void cmd_study(const StudyOptions& o, std::ostream& out) {
  check_frac(o.frac);
  check_lower_bound(o.lower_bound);
  StudyConfig c;
  c.seed = o.seed;
  c.replicates = o.replicates;
  c.jobs = o.jobs;
  c.lower_bound = o.lower_bound;
  c.family = flag_value("--family", [&] { return parse_family(o.family); });
  c.record_timing = o.timing;
  c.estimators.clear();
  for (const auto& e : o.estimators) {
    c.estimators.push_back(flag_value("--estimator", [&] { return parse_estimator(e); }));
  }
  if (o.grid == "full") {
    for (Scenario s : full_grid()) {
      s.n = o.n;
      s.frac = o.frac;
      c.scenarios.push_back(s);
    }
  } else if (!o.grid.empty()) {
    throw DomainError("unknown grid '" + o.grid + "' (expected full)");
  }
  for (const auto& text : o.scenarios) {
    c.scenarios.push_back(flag_value("--scenario", [&] { return parse_scenario(text, o.n, o.frac); }));
  }
  if (c.scenarios.empty()) {
    throw DomainError("study needs --scenario or --grid full");
  }

  const StudyResult r = run_study(c);
  Output dst(o.output, out);
  write_study_csv(dst.stream(), r);
  dst.finish();
  if (!o.json_path.empty()) {
    Output js(o.json_path, out);
    js.stream() << study_json(r).dump(2) << '\n';
    js.finish();
  }
}

// ---------------------------------------------------------------- dist

struct DistOptions {
  std::string output;
  std::string law = "ml";
  std::string function = "cdf";
  double beta = 1.0;
  double theta = 1.0;
  double sigma = 1.0;
  std::vector<double> at;
  std::optional<double> from;
  std::optional<double> to;
  std::size_t count = 11;
};

void cmd_dist(const DistOptions& o, std::ostream& out) {
  std::vector<double> xs = o.at;
  if (o.from || o.to) {
    if (!o.from || !o.to || o.count < 2) {
      throw DomainError("--from and --to need each other and --count >= 2");
    }
    for (std::size_t i = 0; i < o.count; ++i) {
      xs.push_back(*o.from + (*o.to - *o.from) * static_cast<double>(i) /
                                 static_cast<double>(o.count - 1));
    }
  }
  if (xs.empty()) {
    throw DomainError("dist needs --at or --from/--to");
  }
  std::function<double(double)> f;
  std::unique_ptr<MlDistribution> ml;
  std::unique_ptr<MixtureDistribution> mix;
  if (o.law == "ml") {
    ml = std::make_unique<MlDistribution>(MlParams{o.beta, o.sigma});
    if (o.function == "cdf") f = [&](double t) { return ml->cdf(t); };
    if (o.function == "pdf") f = [&](double t) { return ml->pdf(t); };
    if (o.function == "quantile") f = [&](double q) { return ml->quantile(q); };
  } else if (o.law == "mixture") {
    mix = std::make_unique<MixtureDistribution>(FcppParams{o.beta, o.theta, o.sigma});
    if (o.function == "cdf") f = [&](double t) { return mix->cdf(t); };
    if (o.function == "pdf") f = [&](double t) { return mix->density(t); };
    if (o.function == "quantile") f = [&](double q) { return mix->quantile(q); };
  } else {
    throw DomainError("unknown law '" + o.law + "' (expected ml or mixture)");
  }
  if (!f) {
    throw DomainError("unknown function '" + o.function + "' (expected cdf, pdf or quantile)");
  }
  Output dst(o.output, out);
  dst.stream() << (o.function == "quantile" ? "q" : "t") << ',' << o.function << '\n';
  for (double x : xs) {
    dst.stream() << format_number(x) << ',' << format_number(f(x)) << '\n';
  }
  dst.finish();
}

// ---------------------------------------------------------------- timing

struct TimingOptions {
  std::string output;
  std::vector<std::size_t> k = {100, 200, 400, 800};
  std::size_t replicates = 5;
  std::uint64_t seed = 1;
  std::string estimator = "cmmod";
};

void cmd_timing(const TimingOptions& o, std::ostream& out) {
  const EstimatorKind estimator =
      flag_value("--estimator", [&] { return parse_estimator(o.estimator); });
  const TimingProfile t = timing_profile(o.k, o.replicates, o.seed, estimator);
  json rows = json::array();
  for (const TimingRow& r : t.rows) {
    rows.push_back({{"k", r.k},
                    {"mean_seconds", r.mean_seconds},
                    {"replicates", r.replicates},
                    {"failures", r.failures}});
  }
  Output dst(o.output, out);
  dst.stream() << json{{"rows", rows}, {"slope", t.slope}}.dump(2) << '\n';
  dst.finish();
}

void add_config_flag(CLI::App* cmd) {
  cmd->add_option("--config", "File of key=value lines; command-line flags take precedence");
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::size_t default_n, double default_frac) {
  Scenario s;
  s.n = default_n;
  s.frac = default_frac;
  std::optional<double> theta;
  std::size_t start = 0;
  bool first = true;
  while (start <= text.size()) {
    const auto slash = text.find('/', start);
    const std::string_view part =
        text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    if (first) {
      s.waiting = parse_waiting_law(part);
      first = false;
    } else {
      const auto eq = part.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("scenario field '" + std::string(part) + "' is not key=value");
      }
      const std::string_view key = part.substr(0, eq);
      const std::string value(part.substr(eq + 1));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
        throw ParseError("bad number '" + value + "' in scenario '" + std::string(text) + "'");
      }
      if (key == "theta") {
        theta = v;
      } else if (key == "n") {
        if (!(v >= 2.0) || v != std::floor(v)) {
          throw ParseError("scenario n must be an integer >= 2");
        }
        s.n = static_cast<std::size_t>(v);
      } else if (key == "frac") {
        s.frac = v;
      } else {
        throw ParseError("unknown scenario field '" + std::string(key) + "'");
      }
    }
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  if (!theta) {
    throw ParseError("scenario '" + std::string(text) + "' needs theta=..., e.g. ml:0.8/theta=0.8");
  }
  s.theta = *theta;
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional compound Poisson models for clustered extreme events", "fcpp"};
  app.require_subcommand(1);
  app.fallthrough(false);

  FitOptions fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit inter-exceedance times of an event series");
  fit_cmd->add_option("--input", fit.input, "CSV with header time,magnitude[,segment]")->required();
  fit_cmd->add_option("--output", fit.output, "JSON report path (default: stdout)");
  fit_cmd->add_option("--frac", fit.frac, "Fraction of events above the threshold")
      ->capture_default_str();
  fit_cmd->add_option("--threshold", fit.threshold, "Explicit threshold; overrides --frac");
  fit_cmd->add_option("--lower-bound", fit.lower_bound, "Lower bound a for beta and theta")
      ->capture_default_str();
  fit_cmd->add_option("--family", fit.family, "fcpp, fpp, cpp or pp")->capture_default_str();
  fit_cmd->add_option("--estimator", fit.estimator, "cmmod, interval, logmom or mle")
      ->capture_default_str();
  add_config_flag(fit_cmd);

  SimulateOptions sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Simulate an event series as CSV");
  sim_cmd->add_option("--seed", sim.seed, "Base seed")->required();
  sim_cmd->add_option("--theta", sim.theta, "Extremal index of the magnitudes")
      ->capture_default_str();
  sim_cmd
      ->add_option("--waiting", sim.waiting,
                   "exponential, dirac, pareto:A, stable:B, ml:B or shifted-pareto:B")
      ->capture_default_str();
  sim_cmd->add_option("--n", sim.n, "Number of events")->capture_default_str();
  sim_cmd->add_option("--replicate", sim.replicate, "Replicate index")->capture_default_str();
  sim_cmd->add_option("--output", sim.output, "CSV path (default: stdout)");
  add_config_flag(sim_cmd);

  StudyOptions study;
  CLI::App* study_cmd = app.add_subcommand("study", "Monte-Carlo study of the estimators");
  study_cmd->add_option("--seed", study.seed, "Base seed")->required();
  study_cmd->add_option("--replicates", study.replicates, "Replicates per scenario")
      ->capture_default_str();
  study_cmd->add_option("--jobs", study.jobs, "Worker threads")->capture_default_str();
  study_cmd->add_option("--estimator", study.estimators, "Comma-separated estimators")
      ->delimiter(',')
      ->capture_default_str();
  study_cmd
      ->add_option("--scenario", study.scenarios,
                   "LAW/theta=X[/n=N][/frac=F], repeatable or comma-separated")
      ->delimiter(',');
  study_cmd->add_option("--grid", study.grid, "'full' for the complete scenario grid");
  study_cmd->add_option("--n", study.n, "Series length for scenarios without n=")
      ->capture_default_str();
  study_cmd->add_option("--frac", study.frac, "Exceedance fraction for scenarios without frac=")
      ->capture_default_str();
  study_cmd->add_option("--lower-bound", study.lower_bound, "Lower bound a for cmmod")
      ->capture_default_str();
  study_cmd->add_option("--family", study.family, "Model family for cmmod")->capture_default_str();
  study_cmd->add_option("--output", study.output, "Summary CSV path (default: stdout)");
  study_cmd->add_option("--json", study.json_path, "Also write the full result as JSON");
  study_cmd->add_flag("--timing", study.timing, "Record wall time per fit");
  add_config_flag(study_cmd);

  DistOptions dist;
  CLI::App* dist_cmd = app.add_subcommand("dist", "Tabulate cdf, pdf or quantile");
  dist_cmd->add_option("--law", dist.law, "ml or mixture")->capture_default_str();
  dist_cmd->add_option("--function", dist.function, "cdf, pdf or quantile")->capture_default_str();
  dist_cmd->add_option("--beta", dist.beta)->capture_default_str();
  dist_cmd->add_option("--theta", dist.theta, "Mixture weight (mixture only)")->capture_default_str();
  dist_cmd->add_option("--sigma", dist.sigma)->capture_default_str();
  dist_cmd->add_option("--at", dist.at, "Comma-separated arguments")->delimiter(',');
  dist_cmd->add_option("--from", dist.from, "Start of an even grid");
  dist_cmd->add_option("--to", dist.to, "End of an even grid");
  dist_cmd->add_option("--count", dist.count, "Grid points")->capture_default_str();
  dist_cmd->add_option("--output", dist.output, "CSV path (default: stdout)");
  add_config_flag(dist_cmd);

  TimingOptions timing;
  CLI::App* timing_cmd = app.add_subcommand("timing", "Mean fit time against k");
  timing_cmd->add_option("--k", timing.k, "Comma-separated exceedance counts")
      ->delimiter(',')
      ->capture_default_str();
  timing_cmd->add_option("--replicates", timing.replicates)->capture_default_str();
  timing_cmd->add_option("--seed", timing.seed)->capture_default_str();
  timing_cmd->add_option("--estimator", timing.estimator)->capture_default_str();
  timing_cmd->add_option("--output", timing.output, "JSON path (default: stdout)");
  add_config_flag(timing_cmd);

  try {
    std::vector<std::string> reversed = merge_config(args);
    std::reverse(reversed.begin(), reversed.end());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsage;
    }
    if (fit_cmd->parsed()) cmd_fit(fit, out);
    if (sim_cmd->parsed()) cmd_simulate(sim, out);
    if (study_cmd->parsed()) cmd_study(study, out);
    if (dist_cmd->parsed()) cmd_dist(dist, out);
    if (timing_cmd->parsed()) cmd_timing(timing, out);
    return kOk;
  } catch (const ParseError& e) {
    err << "fcpp: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InsufficientDataError& e) {
    err << "fcpp: insufficient data: " << e.what() << '\n';
    return kData;
  } catch (const DegenerateSampleError& e) {
    err << "fcpp: degenerate sample: " << e.what() << '\n';
    return kData;
  } catch (const OptimizationError& e) {
    err << "fcpp: optimization failed: " << e.what() << '\n';
    return kOptimization;
  } catch (const IoError& e) {
    err << "fcpp: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << "fcpp: invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "fcpp: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace fcpp::cli
