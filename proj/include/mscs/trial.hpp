#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mscs/problem.hpp"
#include "mscs/rng.hpp"

namespace mscs {

/// Thrown by Evaluator when the function-evaluation cap is reached. Engines
/// catch it and finish the trial with what they have.
struct BudgetExhausted : std::exception {
  const char* what() const noexcept override { return "function-evaluation budget exhausted"; }
};

struct Solution {
  Vec x;
  double f = std::numeric_limits<double>::infinity();
};

/// Counts penalized evaluations, enforces max_fe and remembers the best point
/// ever evaluated. One Evaluator per trial.
class Evaluator {
 public:
  Evaluator(const ObjectiveProblem& problem, PenaltyConfig penalty, RngStream& noise,
            std::optional<std::size_t> max_fe = std::nullopt)
      : problem_(problem), penalty_(penalty), noise_(noise), max_fe_(max_fe) {}

  double operator()(std::span<const double> x) {
    if (max_fe_ && used_ >= *max_fe_) throw BudgetExhausted{};
    ++used_;
    const double f = evaluate_penalized(problem_, x, penalty_, &noise_);
    if (f < best_.f) {
      best_.x.assign(x.begin(), x.end());
      best_.f = f;
    }
    return f;
  }

  const ObjectiveProblem& problem() const noexcept { return problem_; }
  std::size_t used() const noexcept { return used_; }
  std::optional<std::size_t> max_fe() const noexcept { return max_fe_; }
  const Solution& best() const noexcept { return best_; }

 private:
  const ObjectiveProblem& problem_;
  PenaltyConfig penalty_;
  RngStream& noise_;
  std::optional<std::size_t> max_fe_;
  std::size_t used_ = 0;
  Solution best_;
};

struct TrialResult {
  Vec best_x;
  double best_f = std::numeric_limits<double>::infinity();
  std::optional<ErrorValue> e_f;  // set when the problem has a known minimum
  std::vector<double> trace;      // best-so-far after each iteration
  std::size_t fe_used = 0;
  std::size_t iterations = 0;
};

inline TrialResult make_trial_result(const Evaluator& eval, std::vector<double> trace,
                                     std::size_t iterations) {
  TrialResult r;
  r.best_x = eval.best().x;
  r.best_f = eval.best().f;
  if (eval.problem().known_min && std::isfinite(r.best_f)) r.e_f = error_metric(r.best_f, *eval.problem().known_min);
  r.trace = std::move(trace);
  r.fe_used = eval.used();
  r.iterations = iterations;
  return r;
}

/// Uniform point inside the bounds, snapped onto integer grids.
inline Vec random_point(const ObjectiveProblem& problem, RngStream& rng) {
  Vec x(problem.dim());
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng.uniform(problem.lower[d], problem.upper[d]);
  return clamp_and_snap(x, problem);
}

}  // namespace mscs
