#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "mscs/errors.hpp"
#include "mscs/levy.hpp"
#include "mscs/problem.hpp"
#include "mscs/rng.hpp"
#include "mscs/trial.hpp"

namespace mscs {

/// Mantegna sampler with sigma_u computed once.
class LevySampler {
 public:
  explicit LevySampler(double lambda) : lambda_(lambda), sigma_(mantegna_sigma(lambda)) {}

  double operator()(RngStream& rng) const {
    const double u = rng.normal() * sigma_;
    const double v = rng.normal();
    return u / std::pow(std::abs(v), 1.0 / lambda_);
  }

  double lambda() const noexcept { return lambda_; }
  double sigma() const noexcept { return sigma_; }

 private:
  double lambda_;
  double sigma_;
};

/// alpha * (upper - lower), per dimension.
inline Vec effective_alpha(const ObjectiveProblem& problem, double alpha) {
  Vec a(problem.dim());
  for (std::size_t d = 0; d < a.size(); ++d) a[d] = alpha * problem.width(d);
  return a;
}

/// x_i + beta * s (x) (x_j - x_k), s_d ~ U[0,1) drawn per dimension.
inline Vec local_walk_step(std::span<const double> xi, std::span<const double> xj,
                           std::span<const double> xk, double beta, RngStream& rng) {
  Vec out(xi.begin(), xi.end());
  for (std::size_t d = 0; d < out.size(); ++d) out[d] += beta * rng.uniform() * (xj[d] - xk[d]);
  return out;
}

/// Local random walk gated by H(p_a - eps): one eps ~ U[0,1) per call; the
/// step is applied only when eps < p_a (H(0) = 0).
inline Vec local_walk(std::span<const double> xi, std::span<const double> xj,
                      std::span<const double> xk, double beta, double p_a, RngStream& rng) {
  const double eps = rng.uniform();
  if (!(eps < p_a)) return Vec(xi.begin(), xi.end());
  return local_walk_step(xi, xj, xk, beta, rng);
}

/// How the Levy step is scaled per dimension.
///  - domain_width:     alpha * (upper - lower)
///  - distance_to_best: alpha * (x_i - g), g the current best of the
///                      population the move belongs to; the step shrinks as
///                      the population closes in and is zero at g itself.
enum class StepScale { domain_width, distance_to_best };

inline Vec distance_alpha(std::span<const double> xi, std::span<const double> best, double alpha) {
  Vec a(xi.size());
  for (std::size_t d = 0; d < a.size(); ++d) a[d] = alpha * (xi[d] - best[d]);
  return a;
}

/// x_i + alpha_eff (x) L, one independent Levy step per dimension.
inline Vec levy_flight(std::span<const double> xi, std::span<const double> alpha_eff,
                       const LevySampler& levy, RngStream& rng) {
  Vec out(xi.begin(), xi.end());
  for (std::size_t d = 0; d < out.size(); ++d) out[d] += alpha_eff[d] * levy(rng);
  return out;
}

struct CsParams {
  std::size_t population = 80;
  double p_a = 0.25;
  LevyParams levy;
  StepScale step_scale = StepScale::domain_width;
  std::size_t t_max = 1000;
  std::optional<std::size_t> max_fe;
  std::uint64_t seed = 1;
  PenaltyConfig penalty;

  void validate() const {
    if (population < 3) throw ParameterError("cs: population must be >= 3");
    if (!(p_a >= 0.0 && p_a <= 1.0)) throw ParameterError("cs: p_a must lie in [0,1]");
    if (t_max < 1) throw ParameterError("cs: t_max must be >= 1");
    levy.validate();
  }
};

/// Standard cuckoo search. Each iteration:
///  1. Levy phase: every nest i proposes x_i + alpha_eff (x) L; the proposal
///     replaces a uniformly chosen nest j if strictly better.
///  2. Discovery phase: the round(p_a n) worst nests each propose a local
///     walk x_w + beta s (x) (x_j - x_k), (j, k) a random ordered pair;
///     strictly better proposals replace x_w.
/// Stops after t_max iterations or when max_fe evaluations are spent.
inline TrialResult cs_run(const ObjectiveProblem& problem, const CsParams& params) {
  problem.validate();
  params.validate();
  RngStream rng(params.seed);
  Evaluator eval(problem, params.penalty, rng, params.max_fe);
  const LevySampler levy(params.levy.lambda);
  const Vec alpha_eff = effective_alpha(problem, params.levy.alpha);
  const std::size_t n = params.population;
  const auto n_discover =
      static_cast<std::size_t>(std::llround(params.p_a * static_cast<double>(n)));

  std::vector<Vec> nests;
  std::vector<double> fitness;
  std::vector<double> trace;
  std::size_t iteration = 0;
  std::size_t fe_at_iteration_start = 0;
  std::vector<std::size_t> order(n);

  try {
    for (std::size_t i = 0; i < n; ++i) {
      Vec x = random_point(problem, rng);
      fitness.push_back(eval(x));
      nests.push_back(std::move(x));
    }
    for (iteration = 0; iteration < params.t_max; ++iteration) {
      fe_at_iteration_start = eval.used();
      const Vec best = nests[static_cast<std::size_t>(
          std::min_element(fitness.begin(), fitness.end()) - fitness.begin())];
      for (std::size_t i = 0; i < n; ++i) {
        const Vec scale = params.step_scale == StepScale::domain_width
                              ? alpha_eff
                              : distance_alpha(nests[i], best, params.levy.alpha);
        Vec cand = clamp_and_snap(levy_flight(nests[i], scale, levy, rng), problem);
        const double f = eval(cand);
        const auto j = static_cast<std::size_t>(rng.below(n));
        if (f < fitness[j]) {
          nests[j] = std::move(cand);
          fitness[j] = f;
        }
      }

      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
      for (std::size_t r = 0; r < n_discover; ++r) {
        const std::size_t w = order[r];
        const auto [j, k] = distinct_random_pair(n, rng);
        Vec cand = clamp_and_snap(local_walk_step(nests[w], nests[j], nests[k], params.levy.beta, rng),
                                  problem);
        const double f = eval(cand);
        if (f < fitness[w]) {
          nests[w] = std::move(cand);
          fitness[w] = f;
        }
      }
      trace.push_back(eval.best().f);
    }
  } catch (const BudgetExhausted&) {
    // Partial iteration: record where it stopped.
    if (fitness.size() == n && eval.used() > fe_at_iteration_start) {
      trace.push_back(eval.best().f);
      ++iteration;
    }
  } catch (const EvaluationError& e) {
    throw TrialAborted(e.what(), iteration, eval.used());
  } catch (const DivergenceError& e) {
    throw TrialAborted(e.what(), iteration, eval.used());
  }
  return make_trial_result(eval, std::move(trace), iteration);
}

}  // namespace mscs
