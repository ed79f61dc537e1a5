// Command-line front end: bench, trace and case runs.

#include <CLI11.hpp>

#include <deque>
#include <exception>
#include <iostream>
#include <string>

#include "mscs/harness.hpp"

namespace {

// Flag values are kept as text and pushed through set_option, the same path
// the config file uses, so both accept exactly the same syntax.
class Flags {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& slot = slots_.emplace_back();
    slot.key = key;
    slot.option = app->add_option(flag, slot.text, help);
  }

  void apply(mscs::ExperimentConfig& cfg) const {
    for (const auto& s : slots_)
      if (s.option->count() > 0) mscs::set_option(cfg, s.key, s.text);
  }

 private:
  struct Slot {
    std::string key;
    std::string text;
    CLI::Option* option = nullptr;
  };
  std::deque<Slot> slots_;  // stable addresses for CLI11's bound strings
};

void add_algorithm_flags(Flags& f, CLI::App* app) {
  f.add(app, "--function", "function", "benchmark label (f1..f15) or raw name (ackley, ...)");
  f.add(app, "--dim", "dim", "dimension");
  f.add(app, "--algo", "algo", "cs, mscs or both");
  f.add(app, "--trials", "trials", "independent trials");
  f.add(app, "--iters", "iters", "iterations (t_max)");
  f.add(app, "--max-fe", "max_fe", "evaluation cap for both algorithms");
  f.add(app, "--seed", "seed", "master seed");
  f.add(app, "--out", "out", "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-species cuckoo search experiments"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "file of `key = value` lines; overrides flags");

  Flags flags;
  auto* bench = app.add_subcommand("bench", "CS vs MSCS campaign on one benchmark: results.csv, summary.csv");
  auto* trace = app.add_subcommand("trace", "median convergence traces on one benchmark: trace.csv");
  auto* study = app.add_subcommand("case", "20 MSCS runs on a design case: case_runs.csv, case_report.txt");
  for (auto* sub : {bench, trace}) {
    sub->fallthrough();
    add_algorithm_flags(flags, sub);
  }
  study->fallthrough();
  flags.add(study, "--name", "name", "spring, vessel, reducer, vibration or iris");
  flags.add(study, "--data", "data", "iris data file");
  flags.add(study, "--trials", "trials", "number of runs");
  flags.add(study, "--iters", "iters", "iterations per run");
  flags.add(study, "--seed", "seed", "master seed");
  flags.add(study, "--out", "out", "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    mscs::ExperimentConfig cfg;
    flags.apply(cfg);
    if (!config_path.empty()) mscs::apply_config_file(cfg, config_path);

    if (bench->parsed()) {
      const auto result = mscs::run_campaign(cfg);
      mscs::write_campaign(result, cfg.out_dir);
      mscs::write_summary_csv(std::cout, result);
      for (const auto& r : result.rows)
        if (r.aborted)
          std::cerr << "trial " << r.trial << " (" << mscs::algorithm_name(r.algorithm)
                    << ") aborted: " << *r.aborted << '\n';
    } else if (trace->parsed()) {
      const auto table = mscs::emit_trace(cfg);
      auto os = mscs::detail::open_output(cfg.out_dir, "trace.csv");
      mscs::write_trace_csv(os, table);
      std::cout << "wrote " << (cfg.out_dir / "trace.csv").string() << '\n';
    } else {
      const auto report = mscs::run_case(cfg);
      mscs::write_case(report, cfg.out_dir);
      mscs::write_case_report(std::cout, report);
    }
  } catch (const mscs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const mscs::IngestionError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
