#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mscs/harness.hpp"

using namespace mscs;

namespace {

ExperimentConfig small_bench(const std::string& fn = "f2") {
  ExperimentConfig cfg;
  cfg.function = fn;
  cfg.dim = 5;
  cfg.trials = 4;
  cfg.t_max = 60;
  cfg.master_seed = 99;
  return cfg;
}

std::string csv_results(const CampaignResult& c) {
  std::ostringstream os;
  write_results_csv(os, c);
  return os.str();
}

std::string csv_summary(const CampaignResult& c) {
  std::ostringstream os;
  write_summary_csv(os, c);
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Format, LocaleFreeAndRoundTrip) {
  EXPECT_EQ(format_sci4(1.41e-11), "1.410e-11");
  EXPECT_EQ(format_sci4(12346.0), "1.235e+04");
  EXPECT_EQ(format_full(0.1), "0.1");
  EXPECT_EQ(std::strtod(format_full(1.0 / 3.0).c_str(), nullptr), 1.0 / 3.0);
  EXPECT_EQ(format_full(std::nan("")), "nan");
}

TEST(Config, ParsesKeysAndOverrides) {
  ExperimentConfig cfg;
  std::istringstream in(
      "# comment\n"
      "function = f5\n"
      "dim = 30   # trailing\n"
      "algo = mscs\n"
      "trials = 7\n"
      "iters = 250\n"
      "max_fe = 5000\n"
      "seed = 123\n"
      "p_a = 0.3\n"
      "alpha = 0.02\n"
      "species = 10, 15, 15\n"
      "step_scale = distance_to_best\n"
      "\n");
  apply_config(cfg, in);
  EXPECT_EQ(cfg.function, "f5");
  EXPECT_EQ(cfg.dim, 30u);
  EXPECT_EQ(cfg.algorithm, Algorithm::mscs);
  EXPECT_EQ(cfg.bench_trials(), 7u);
  EXPECT_EQ(cfg.iterations(), 250u);
  EXPECT_EQ(cfg.fe_cap(), 5000u);
  EXPECT_EQ(cfg.master_seed, 123u);
  EXPECT_EQ(cfg.cs.p_a, 0.3);
  EXPECT_EQ(cfg.mscs.p_a, 0.3);
  EXPECT_EQ(cfg.mscs.levy.alpha, 0.02);
  EXPECT_EQ(cfg.mscs.species_sizes, (std::vector<std::size_t>{10, 15, 15}));
  EXPECT_EQ(cfg.cs.step_scale, StepScale::distance_to_best);
}

TEST(Config, Errors) {
  ExperimentConfig cfg;
  std::istringstream unknown("colour = blue\n");
  EXPECT_THROW(apply_config(cfg, unknown), ConfigError);
  std::istringstream bad_value("dim = ten\n");
  EXPECT_THROW(apply_config(cfg, bad_value), ConfigError);
  std::istringstream no_eq("dim 10\n");
  EXPECT_THROW(apply_config(cfg, no_eq), ConfigError);
  std::istringstream algo("algo = ga\n");
  EXPECT_THROW(apply_config(cfg, algo), ConfigError);
  EXPECT_THROW(apply_config_file(cfg, "/nonexistent.cfg"), ConfigError);
}

TEST(Config, DefaultBudgetIsMscsNominal) {
  ExperimentConfig cfg;
  EXPECT_EQ(cfg.fe_cap(), 42120u);
  cfg.t_max = 100;
  EXPECT_EQ(cfg.fe_cap(), 120u + 100u * 42u);
  cfg.case_name = "iris";
  cfg.t_max.reset();
  EXPECT_EQ(cfg.iterations(), 100u);
}

TEST(Campaign, UnknownProblemIsConfigError) {
  auto cfg = small_bench("f99");
  EXPECT_THROW(run_campaign(cfg), ConfigError);
  cfg = small_bench();
  cfg.function.clear();
  EXPECT_THROW(run_campaign(cfg), ConfigError);
  cfg = small_bench();
  cfg.trials = 0;
  EXPECT_THROW(run_campaign(cfg), ConfigError);
}

TEST(Campaign, RowsSummaryAndBudgetParity) {
  const auto cfg = small_bench();
  const auto c = run_campaign(cfg);
  ASSERT_EQ(c.rows.size(), 8u);
  ASSERT_EQ(c.summary.size(), 2u);
  for (std::size_t t = 0; t < 4; ++t) {
    const auto& cs = c.rows[t];
    const auto& ms = c.rows[4 + t];
    EXPECT_EQ(cs.algorithm, Algorithm::cs);
    EXPECT_EQ(ms.algorithm, Algorithm::mscs);
    EXPECT_LE(cs.fe_used, cfg.fe_cap());
    EXPECT_LE(ms.fe_used, cfg.fe_cap());
    const auto diff = cs.fe_used > ms.fe_used ? cs.fe_used - ms.fe_used : ms.fe_used - cs.fe_used;
    EXPECT_LE(diff, 40u + 2u + 80u);
  }
  for (const auto& s : c.summary) EXPECT_LE(s.best_e, s.mean_e);
}

TEST(Campaign, SummaryBestIsMinimumOfResultsColumn) {
  const auto c = run_campaign(small_bench("f5"));
  const auto rows = parse_csv(csv_results(c));
  ASSERT_EQ(rows[0], (std::vector<std::string>{"problem", "algo", "trial", "best_f", "e_f", "fe_used"}));
  double min_cs = INFINITY, min_ms = INFINITY;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double e = std::strtod(rows[i][4].c_str(), nullptr);
    (rows[i][1] == "cs" ? min_cs : min_ms) = std::min(rows[i][1] == "cs" ? min_cs : min_ms, e);
  }
  const auto summary = parse_csv(csv_summary(c));
  ASSERT_EQ(summary[0], (std::vector<std::string>{"problem", "algo", "best_e", "mean_e", "fe_mean"}));
  EXPECT_EQ(summary[1][2], format_sci4(min_cs));
  EXPECT_EQ(summary[2][2], format_sci4(min_ms));
}

TEST(Campaign, SingleTrialBestEqualsMean) {
  auto cfg = small_bench();
  cfg.trials = 1;
  for (const auto& s : run_campaign(cfg).summary) EXPECT_EQ(s.best_e, s.mean_e);
}

TEST(Campaign, ByteIdenticalOnRerun) {
  const auto dir = std::filesystem::temp_directory_path() / "mscs_harness_test";
  std::filesystem::remove_all(dir);
  const auto cfg = small_bench("f4");  // noisy objective included
  write_campaign(run_campaign(cfg), dir / "a");
  write_campaign(run_campaign(cfg), dir / "b");
  for (const char* f : {"results.csv", "summary.csv"}) {
    const auto a = slurp(dir / "a" / f), b = slurp(dir / "b" / f);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b) << f;
    EXPECT_EQ(a.find('\r'), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Campaign, AbortedTrialIsRecorded) {
  std::vector<TrialRow> rows(3);
  for (std::size_t t = 0; t < 3; ++t) {
    rows[t].problem = "p";
    rows[t].trial = t;
    rows[t].e_f = 1.0 + static_cast<double>(t);
    rows[t].best_f = rows[t].e_f.value();
    rows[t].fe_used = 10;
  }
  rows[1].aborted = "boom";
  rows[1].e_f.reset();
  const auto s = summarize(rows, "p", Algorithm::cs);
  EXPECT_EQ(s.completed, 2u);
  EXPECT_EQ(s.best_e, 1.0);
  EXPECT_EQ(s.mean_e, 2.0);
  CampaignResult c{rows, {s}};
  const auto parsed = parse_csv(csv_results(c));
  EXPECT_EQ(parsed[2][4], "nan");
}

TEST(Trace, RowsMonotoneAndShaped) {
  auto cfg = small_bench("f5");
  cfg.t_max = 80;
  const auto t = emit_trace(cfg);
  ASSERT_TRUE(t.cs && t.mscs);
  EXPECT_EQ(t.rows, 80u);
  for (const auto* col : {&*t.cs, &*t.mscs}) {
    ASSERT_EQ(col->size(), 80u);
    for (std::size_t i = 1; i < col->size(); ++i) ASSERT_LE((*col)[i], (*col)[i - 1]);
  }
  std::ostringstream os;
  write_trace_csv(os, t);
  const auto rows = parse_csv(os.str());
  ASSERT_EQ(rows.size(), 81u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"iter", "cs_best", "mscs_best"}));
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_EQ(rows.back()[0], "80");
}

TEST(Trace, MedianPadsShortTrials) {
  std::vector<TrialRow> rows(3);
  rows[0].trace = {5, 4, 3};
  rows[1].trace = {6, 2};
  rows[2].trace = {9, 8, 7};
  const auto m = median_trace(rows, Algorithm::cs, 4);
  EXPECT_EQ(m, (std::vector<double>{6, 4, 3, 3}));
  rows.pop_back();
  EXPECT_EQ(median_trace(rows, Algorithm::cs, 2), (std::vector<double>{5.5, 3}));
}

TEST(Trace, SingleAlgorithmLeavesOtherColumnEmpty) {
  auto cfg = small_bench();
  cfg.algorithm = Algorithm::cs;
  cfg.trials = 1;
  cfg.t_max = 5;
  std::ostringstream os;
  write_trace_csv(os, emit_trace(cfg));
  const auto rows = parse_csv(os.str());
  EXPECT_EQ(rows[1].size(), 3u);
  EXPECT_TRUE(rows[1][2].empty());
}

TEST(Case, SpringReport) {
  ExperimentConfig cfg;
  cfg.case_name = "spring";
  cfg.trials = 3;
  cfg.t_max = 100;
  const auto rep = run_case(cfg);
  EXPECT_EQ(rep.runs, 3u);
  EXPECT_EQ(rep.run_best_f.size(), 3u);
  EXPECT_EQ(rep.best_f, *std::min_element(rep.run_best_f.begin(), rep.run_best_f.end()));
  EXPECT_EQ(rep.best_x.size(), 3u);
  EXPECT_TRUE(std::isfinite(rep.best_max_constraint));
  std::ostringstream os;
  write_case_runs_csv(os, rep);
  EXPECT_EQ(os.str().substr(0, 20), "run,best_f,x1,x2,x3\n");
}

TEST(Case, VibrationMeans) {
  ExperimentConfig cfg;
  cfg.case_name = "vibration";
  cfg.trials = 2;
  cfg.t_max = 50;
  const auto rep = run_case(cfg);
  ASSERT_TRUE(rep.mean_estimates.has_value());
  EXPECT_DOUBLE_EQ((*rep.mean_estimates)[0], 0.5 * (rep.run_best_x[0][0] + rep.run_best_x[1][0]));
}

TEST(Case, IrisNeedsDataAndReportsAccuracy) {
  ExperimentConfig cfg;
  cfg.case_name = "iris";
  cfg.trials = 2;
  EXPECT_THROW(run_case(cfg), IngestionError);
  cfg.data_path = "/nonexistent/iris.data";
  EXPECT_THROW(run_case(cfg), IngestionError);
  cfg.data_path = MSCS_IRIS_PATH;
  cfg.t_max = 20;
  const auto rep = run_case(cfg);
  ASSERT_TRUE(rep.best_accuracy.has_value());
  EXPECT_EQ(rep.run_accuracy.size(), 2u);
  EXPECT_EQ(*rep.best_accuracy, std::max(rep.run_accuracy[0], rep.run_accuracy[1]));
  std::ostringstream os;
  write_case_report(os, rep);
  EXPECT_NE(os.str().find("best_accuracy_percent = "), std::string::npos);
}

TEST(Case, UnknownCase) {
  ExperimentConfig cfg;
  cfg.case_name = "bridge";
  EXPECT_THROW(run_case(cfg), ConfigError);
}
