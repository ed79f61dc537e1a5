#pragma once

// Multi-trial campaigns, convergence traces and case-study runs, plus the
// CSV and report writers and the `key = value` configuration format used by the CLI.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "mscs/benchmarks.hpp"
#include "mscs/cuckoo_search.hpp"
#include "mscs/design_problems.hpp"
#include "mscs/errors.hpp"
#include "mscs/iris.hpp"
#include "mscs/mscs.hpp"
#include "mscs/problem.hpp"
#include "mscs/rng.hpp"
#include "mscs/trial.hpp"
#include "mscs/vibration.hpp"

namespace mscs {

enum class Algorithm { cs, mscs, both };

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "cs") return Algorithm::cs;
  if (s == "mscs") return Algorithm::mscs;
  if (s == "both") return Algorithm::both;
  throw ConfigError("unknown algorithm '" + std::string(s) + "' (expected cs, mscs or both)");
}

inline constexpr std::array<std::string_view, 5> kCaseNames{"spring", "vessel", "reducer", "vibration", "iris"};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::both;
  std::string function;                // benchmark label or raw name
  std::size_t dim = 10;
  std::string case_name;               // spring | vessel | reducer | vibration | iris
  std::string data_path;               // iris data file
  std::optional<std::size_t> trials;   // default 100 for benchmarks, 20 for cases
  std::optional<std::size_t> t_max;    // default 1000, 100 for iris
  std::optional<std::size_t> max_fe;   // default: MSCS nominal evaluations at t_max
  std::uint64_t master_seed = 1;
  std::filesystem::path out_dir = ".";
  CsParams cs;
  MscsParams mscs;

  std::size_t bench_trials() const { return trials.value_or(100); }
  std::size_t case_runs() const { return trials.value_or(20); }
  std::size_t iterations() const { return t_max.value_or(case_name == "iris" ? 100 : 1000); }

  /// Evaluation cap shared by both algorithms in benchmark runs.
  std::size_t fe_cap() const {
    if (max_fe) return *max_fe;
    MscsParams p = mscs;
    p.t_max = iterations();
    return p.nominal_evaluations();
  }

  bool runs(Algorithm a) const { return algorithm == Algorithm::both || algorithm == a; }

  void validate_bench() const {
    if (bench_trials() < 1) throw ConfigError("trials must be >= 1");
    if (iterations() < 1) throw ConfigError("iterations must be >= 1");
    if (function.empty()) throw ConfigError("no benchmark function selected");
    try {
      (void)bench::catalog_problem(function, dim);
    } catch (const LookupError& e) {
      throw ConfigError(e.what());
    } catch (const ParameterError& e) {
      throw ConfigError(e.what());
    }
    cs.validate();
    mscs.validate();
  }

  void validate_case() const {
    if (case_runs() < 1) throw ConfigError("trials must be >= 1");
    if (iterations() < 1) throw ConfigError("iterations must be >= 1");
    if (std::find(kCaseNames.begin(), kCaseNames.end(), case_name) == kCaseNames.end())
      throw ConfigError("unknown case '" + case_name + "'");
    mscs.validate();
  }
};

// ---------------------------------------------------------------------------
// Number formatting. std::to_chars ignores the locale.

inline std::string format_full(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

/// Scientific notation, four significant digits: 1.234e-05.
inline std::string format_sci4(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 3);
  return std::string(buf.data(), res.ptr);
}

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::cs: return "cs";
    case Algorithm::mscs: return "mscs";
    default: return "both";
  }
}

// ---------------------------------------------------------------------------
// Campaigns

struct TrialRow {
  std::string problem;
  Algorithm algorithm = Algorithm::cs;
  std::size_t trial = 0;
  double best_f = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> e_f;
  std::size_t fe_used = 0;
  std::vector<double> trace;
  std::optional<std::string> aborted;  // reason, when the trial was aborted
};

struct SummaryRow {
  std::string problem;
  Algorithm algorithm = Algorithm::cs;
  double best_e = std::numeric_limits<double>::quiet_NaN();
  double mean_e = std::numeric_limits<double>::quiet_NaN();
  double fe_mean = std::numeric_limits<double>::quiet_NaN();
  std::size_t completed = 0;
};

struct CampaignResult {
  std::vector<TrialRow> rows;  // algorithm order cs, mscs; then by trial
  std::vector<SummaryRow> summary;
};

inline CsParams cs_params_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  CsParams p = cfg.cs;
  p.seed = seed;
  p.t_max = cfg.iterations();
  p.max_fe = cfg.fe_cap();
  return p;
}

inline MscsParams mscs_params_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  MscsParams p = cfg.mscs;
  p.seed = seed;
  p.t_max = cfg.iterations();
  p.max_fe = cfg.fe_cap();
  return p;
}

inline TrialRow run_trial(const ObjectiveProblem& problem, Algorithm algo, const ExperimentConfig& cfg,
                          std::size_t t) {
  TrialRow row;
  row.problem = problem.name;
  row.algorithm = algo;
  row.trial = t;
  const std::uint64_t seed = derive_seed(cfg.master_seed, t);
  try {
    const TrialResult r = algo == Algorithm::cs ? cs_run(problem, cs_params_for(cfg, seed))
                                                : mscs_run(problem, mscs_params_for(cfg, seed));
    row.best_f = r.best_f;
    if (r.e_f) row.e_f = r.e_f->e_f;
    row.fe_used = r.fe_used;
    row.trace = r.trace;
  } catch (const TrialAborted& e) {
    row.aborted = e.what();
    row.fe_used = e.fe_used();
  }
  return row;
}

/// best = min E_f, mean = arithmetic mean E_f, both over completed trials.
inline SummaryRow summarize(const std::vector<TrialRow>& rows, std::string problem, Algorithm algo) {
  SummaryRow s;
  s.problem = std::move(problem);
  s.algorithm = algo;
  double sum_e = 0.0, sum_fe = 0.0, best = std::numeric_limits<double>::infinity();
  std::size_t n_e = 0;
  for (const auto& r : rows) {
    if (r.algorithm != algo || r.aborted) continue;
    ++s.completed;
    sum_fe += static_cast<double>(r.fe_used);
    if (!r.e_f) continue;
    ++n_e;
    sum_e += *r.e_f;
    best = std::min(best, *r.e_f);
  }
  if (n_e > 0) {
    s.best_e = best;
    s.mean_e = sum_e / static_cast<double>(n_e);
  }
  if (s.completed > 0) s.fe_mean = sum_fe / static_cast<double>(s.completed);
  return s;
}

inline CampaignResult run_campaign(const ExperimentConfig& cfg) {
  cfg.validate_bench();
  const ObjectiveProblem problem = bench::catalog_problem(cfg.function, cfg.dim);
  CampaignResult out;
  for (Algorithm a : {Algorithm::cs, Algorithm::mscs}) {
    if (!cfg.runs(a)) continue;
    for (std::size_t t = 0; t < cfg.bench_trials(); ++t) out.rows.push_back(run_trial(problem, a, cfg, t));
    out.summary.push_back(summarize(out.rows, problem.name, a));
  }
  return out;
}

inline void write_results_csv(std::ostream& os, const CampaignResult& c) {
  os << "problem,algo,trial,best_f,e_f,fe_used\n";
  for (const auto& r : c.rows) {
    os << r.problem << ',' << algorithm_name(r.algorithm) << ',' << r.trial << ','
       << format_full(r.best_f) << ',';
    if (r.aborted)
      os << "nan";
    else if (r.e_f)
      os << format_full(*r.e_f);
    os << ',' << r.fe_used << '\n';
  }
}

inline void write_summary_csv(std::ostream& os, const CampaignResult& c) {
  os << "problem,algo,best_e,mean_e,fe_mean\n";
  for (const auto& s : c.summary)
    os << s.problem << ',' << algorithm_name(s.algorithm) << ',' << format_sci4(s.best_e) << ','
       << format_sci4(s.mean_e) << ',' << format_sci4(s.fe_mean) << '\n';
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::ofstream os(dir / file, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + (dir / file).string() + "'");
  return os;
}

}  // namespace detail

inline void write_campaign(const CampaignResult& c, const std::filesystem::path& dir) {
  auto results = detail::open_output(dir, "results.csv");
  write_results_csv(results, c);
  auto summary = detail::open_output(dir, "summary.csv");
  write_summary_csv(summary, c);
}

// ---------------------------------------------------------------------------
// Traces

struct TraceTable {
  std::size_t rows = 0;
  std::optional<std::vector<double>> cs;    // median best-so-far per iteration
  std::optional<std::vector<double>> mscs;
};

/// Median over trials of the best-so-far after each iteration. A trial that
/// stopped early on the evaluation cap holds its last value for the rest.
inline std::vector<double> median_trace(const std::vector<TrialRow>& rows, Algorithm algo, std::size_t t_max) {
  std::vector<std::vector<double>> padded;
  for (const auto& r : rows) {
    if (r.algorithm != algo || r.aborted || r.trace.empty()) continue;
    std::vector<double> tr(r.trace.begin(), r.trace.begin() + static_cast<std::ptrdiff_t>(std::min(t_max, r.trace.size())));
    tr.resize(t_max, tr.back());
    padded.push_back(std::move(tr));
  }
  std::vector<double> med(t_max, std::numeric_limits<double>::quiet_NaN());
  if (padded.empty()) return med;
  std::vector<double> col(padded.size());
  for (std::size_t i = 0; i < t_max; ++i) {
    for (std::size_t t = 0; t < padded.size(); ++t) col[t] = padded[t][i];
    std::sort(col.begin(), col.end());
    const std::size_t m = col.size() / 2;
    med[i] = col.size() % 2 ? col[m] : 0.5 * (col[m - 1] + col[m]);
  }
  return med;
}

inline TraceTable emit_trace(const ExperimentConfig& cfg) {
  const CampaignResult c = run_campaign(cfg);
  TraceTable t;
  t.rows = cfg.iterations();
  if (cfg.runs(Algorithm::cs)) t.cs = median_trace(c.rows, Algorithm::cs, t.rows);
  if (cfg.runs(Algorithm::mscs)) t.mscs = median_trace(c.rows, Algorithm::mscs, t.rows);
  return t;
}

/// Columns of an algorithm that was not run are left empty.
inline void write_trace_csv(std::ostream& os, const TraceTable& t) {
  os << "iter,cs_best,mscs_best\n";
  for (std::size_t i = 0; i < t.rows; ++i) {
    os << i + 1 << ',';
    if (t.cs) os << format_full((*t.cs)[i]);
    os << ',';
    if (t.mscs) os << format_full((*t.mscs)[i]);
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Case studies (MSCS only)

struct CaseReport {
  std::string name;
  std::size_t runs = 0;
  std::size_t t_max = 0;
  std::vector<double> run_best_f;
  std::vector<Vec> run_best_x;
  Vec best_x;
  double best_f = std::numeric_limits<double>::infinity();
  double best_max_constraint = -std::numeric_limits<double>::infinity();  // g_max at best_x
  std::optional<std::array<double, 2>> mean_estimates;  // vibration: mean (mu, nu)
  std::vector<double> run_accuracy;                      // iris
  std::optional<double> best_accuracy;                   // iris: max over runs
};

inline ObjectiveProblem case_problem(const ExperimentConfig& cfg, std::optional<cases::IrisDataset>& iris) {
  const std::string& n = cfg.case_name;
  if (n == "spring") return cases::spring_problem();
  if (n == "vessel") return cases::pressure_vessel_problem();
  if (n == "reducer") return cases::speed_reducer_problem();
  if (n == "vibration") return cases::vibration_problem();
  if (n == "iris") {
    if (cfg.data_path.empty()) throw IngestionError("iris: no data file given");
    iris = cases::load_iris(cfg.data_path);
    return cases::clustering_problem(*iris);
  }
  throw ConfigError("unknown case '" + n + "'");
}

inline CaseReport run_case(const ExperimentConfig& cfg) {
  cfg.validate_case();
  std::optional<cases::IrisDataset> iris;
  const ObjectiveProblem problem = case_problem(cfg, iris);
  CaseReport rep;
  rep.name = cfg.case_name;
  rep.runs = cfg.case_runs();
  rep.t_max = cfg.iterations();
  std::array<double, 2> sum{0.0, 0.0};
  for (std::size_t r = 0; r < rep.runs; ++r) {
    MscsParams p = cfg.mscs;
    p.seed = derive_seed(cfg.master_seed, r);
    p.t_max = rep.t_max;
    p.max_fe = cfg.max_fe;
    const TrialResult res = mscs_run(problem, p);
    rep.run_best_f.push_back(res.best_f);
    rep.run_best_x.push_back(res.best_x);
    if (res.best_f < rep.best_f) {
      rep.best_f = res.best_f;
      rep.best_x = res.best_x;
    }
    if (rep.name == "vibration") {
      sum[0] += res.best_x[0];
      sum[1] += res.best_x[1];
    }
    if (iris) {
      const double acc = cases::clustering_accuracy(res.best_x, *iris);
      rep.run_accuracy.push_back(acc);
      rep.best_accuracy = std::max(rep.best_accuracy.value_or(0.0), acc);
    }
  }
  if (!problem.constraints.empty()) rep.best_max_constraint = max_constraint(problem, rep.best_x);
  if (rep.name == "vibration") {
    const auto n = static_cast<double>(rep.runs);
    rep.mean_estimates = std::array<double, 2>{sum[0] / n, sum[1] / n};
  }
  return rep;
}

/// One row per run: run,best_f,x1..xD[,accuracy].
inline void write_case_runs_csv(std::ostream& os, const CaseReport& rep) {
  const std::size_t dim = rep.best_x.size();
  os << "run,best_f";
  for (std::size_t d = 0; d < dim; ++d) os << ",x" << d + 1;
  if (!rep.run_accuracy.empty()) os << ",accuracy";
  os << '\n';
  for (std::size_t r = 0; r < rep.runs; ++r) {
    os << r << ',' << format_full(rep.run_best_f[r]);
    for (double v : rep.run_best_x[r]) os << ',' << format_full(v);
    if (!rep.run_accuracy.empty()) os << ',' << format_full(rep.run_accuracy[r]);
    os << '\n';
  }
}

/// Plain `key = value` summary, same format the config parser reads.
inline void write_case_report(std::ostream& os, const CaseReport& rep) {
  os << "case = " << rep.name << '\n';
  os << "runs = " << rep.runs << '\n';
  os << "iterations = " << rep.t_max << '\n';
  os << "best_f = " << format_full(rep.best_f) << '\n';
  os << "best_x =";
  for (std::size_t d = 0; d < rep.best_x.size(); ++d) os << (d ? ", " : " ") << format_full(rep.best_x[d]);
  os << '\n';
  if (std::isfinite(rep.best_max_constraint)) os << "best_max_constraint = " << format_full(rep.best_max_constraint) << '\n';
  if (rep.mean_estimates)
    os << "mean_mu = " << format_full((*rep.mean_estimates)[0]) << '\n'
       << "mean_nu = " << format_full((*rep.mean_estimates)[1]) << '\n';
  if (rep.best_accuracy) os << "best_accuracy_percent = " << format_full(100.0 * *rep.best_accuracy) << '\n';
}

inline void write_case(const CaseReport& rep, const std::filesystem::path& dir) {
  auto runs = detail::open_output(dir, "case_runs.csv");
  write_case_runs_csv(runs, rep);
  auto report = detail::open_output(dir, "case_report.txt");
  write_case_report(report, rep);
}

// ---------------------------------------------------------------------------
// Configuration: `key = value` lines, `#` comments.

namespace detail {

using cases::detail::trim;

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("bad value '" + std::string(v) + "' for '" + std::string(key) + "'");
  return out;
}

inline std::vector<std::size_t> parse_size_list(std::string_view key, std::string_view v) {
  std::vector<std::size_t> out;
  while (true) {
    const auto comma = v.find(',');
    out.push_back(parse_number<std::size_t>(key, trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Apply one setting. Algorithm parameters without a prefix (p_a, alpha,
/// beta, lambda, step_scale, penalty) go to both algorithms.
inline void set_option(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_number;
  const auto v = detail::trim(value);
  const std::string k(detail::trim(key));
  if (k == "algo") cfg.algorithm = parse_algorithm(v);
  else if (k == "function") cfg.function = v;
  else if (k == "dim") cfg.dim = parse_number<std::size_t>(k, v);
  else if (k == "name" || k == "case") cfg.case_name = v;
  else if (k == "data") cfg.data_path = v;
  else if (k == "trials") cfg.trials = parse_number<std::size_t>(k, v);
  else if (k == "iters" || k == "t_max") cfg.t_max = parse_number<std::size_t>(k, v);
  else if (k == "max_fe" || k == "max-fe") cfg.max_fe = parse_number<std::size_t>(k, v);
  else if (k == "seed") cfg.master_seed = parse_number<std::uint64_t>(k, v);
  else if (k == "out") cfg.out_dir = std::string(v);
  else if (k == "p_a") cfg.cs.p_a = cfg.mscs.p_a = parse_number<double>(k, v);
  else if (k == "alpha") cfg.cs.levy.alpha = cfg.mscs.levy.alpha = parse_number<double>(k, v);
  else if (k == "beta") cfg.cs.levy.beta = cfg.mscs.levy.beta = parse_number<double>(k, v);
  else if (k == "lambda") cfg.cs.levy.lambda = cfg.mscs.levy.lambda = parse_number<double>(k, v);
  else if (k == "penalty") cfg.cs.penalty.coefficient = cfg.mscs.penalty.coefficient = parse_number<double>(k, v);
  else if (k == "step_scale") {
    StepScale s;
    if (v == "domain_width") s = StepScale::domain_width;
    else if (v == "distance_to_best") s = StepScale::distance_to_best;
    else throw ConfigError("bad value '" + std::string(v) + "' for 'step_scale'");
    cfg.cs.step_scale = cfg.mscs.step_scale = s;
  }
  else if (k == "cs_population") cfg.cs.population = parse_number<std::size_t>(k, v);
  else if (k == "species") cfg.mscs.species_sizes = detail::parse_size_list(k, v);
  else if (k == "eggs_per_visit") cfg.mscs.eggs_per_visit = parse_number<std::size_t>(k, v);
  else if (k == "nests") cfg.mscs.nests = parse_number<std::size_t>(k, v);
  else if (k == "eggs_per_nest") cfg.mscs.eggs_per_nest = parse_number<std::size_t>(k, v);
  else throw ConfigError("unknown key '" + k + "'");
}

inline void apply_config(ExperimentConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = detail::trim(line);
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = detail::trim(s.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    try {
      set_option(cfg, s.substr(0, eq), s.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  apply_config(cfg, in);
}

}  // namespace mscs
