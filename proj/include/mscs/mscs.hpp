#pragma once

// Multi-species cuckoo search.
//
// m cuckoo species evolve their own populations; a separate host population
// of w nests with q eggs each receives the eggs they lay. One generation is
// n = sum(n_i) egg-laying passes, one swap per unordered species pair, an
// abandonment check on every nest, and elitism for the species bests and the
// best host egg.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "mscs/cuckoo_search.hpp"
#include "mscs/errors.hpp"
#include "mscs/levy.hpp"
#include "mscs/problem.hpp"
#include "mscs/rng.hpp"
#include "mscs/trial.hpp"

namespace mscs {

struct Egg {
  Vec x;
  double fitness = 0.0;
  std::optional<std::size_t> species;  // laying species; empty for host eggs

  bool host_owned() const noexcept { return !species.has_value(); }
};

struct Nest {
  std::vector<Egg> eggs;

  double cuckoo_fraction() const {
    const auto cuckoo = std::count_if(eggs.begin(), eggs.end(), [](const Egg& e) { return !e.host_owned(); });
    return static_cast<double>(cuckoo) / static_cast<double>(eggs.size());
  }

  // Ties resolve to the lowest index.
  std::size_t worst() const {
    std::size_t w = 0;
    for (std::size_t i = 1; i < eggs.size(); ++i)
      if (eggs[i].fitness > eggs[w].fitness) w = i;
    return w;
  }

  std::size_t best() const {
    std::size_t b = 0;
    for (std::size_t i = 1; i < eggs.size(); ++i)
      if (eggs[i].fitness < eggs[b].fitness) b = i;
    return b;
  }
};

struct SpeciesPop {
  std::vector<Solution> cuckoos;
  Solution best;  // g_j*
};

struct MscsParams {
  std::vector<std::size_t> species_sizes{20, 20};  // n_1..n_m
  std::size_t eggs_per_visit = 1;                  // r
  std::size_t nests = 20;                          // w
  std::size_t eggs_per_nest = 4;                   // q
  double p_a = 0.25;
  LevyParams levy;
  StepScale step_scale = StepScale::domain_width;
  std::size_t t_max = 1000;
  std::optional<std::size_t> max_fe;
  std::uint64_t seed = 1;
  PenaltyConfig penalty;

  std::size_t species_count() const noexcept { return species_sizes.size(); }

  std::size_t total_cuckoos() const noexcept {
    return std::accumulate(species_sizes.begin(), species_sizes.end(), std::size_t{0});
  }

  std::size_t host_eggs() const noexcept { return nests * eggs_per_nest; }

  std::size_t swaps_per_generation() const noexcept {
    const std::size_t m = species_count();
    return m * (m - 1) / 2;
  }

  /// Evaluations of init plus t_max generations, not counting nest rebuilds.
  std::size_t nominal_evaluations() const noexcept {
    return total_cuckoos() + host_eggs() +
           t_max * (total_cuckoos() * eggs_per_visit + 2 * swaps_per_generation());
  }

  void validate() const {
    if (species_sizes.empty()) throw ParameterError("mscs: need at least one species");
    for (std::size_t s : species_sizes)
      if (s < 1) throw ParameterError("mscs: every species needs at least one cuckoo");
    if (eggs_per_visit < 1) throw ParameterError("mscs: r must be >= 1");
    if (nests < 1 || eggs_per_nest < 1) throw ParameterError("mscs: w and q must be >= 1");
    if (!(p_a >= 0.0 && p_a <= 1.0)) throw ParameterError("mscs: p_a must lie in [0,1]");
    if (host_eggs() < total_cuckoos()) throw ParameterError("mscs: need w q >= n");
    if (t_max < 1) throw ParameterError("mscs: t_max must be >= 1");
    levy.validate();
  }
};

struct MscsState {
  std::vector<SpeciesPop> species;
  std::vector<Nest> nests;
  Solution g_cs;          // best cuckoo over all species
  Solution g_h;           // best host-owned egg
  Solution overall_best;  // best point ever evaluated
  std::size_t fe_used = 0;
  std::size_t iteration = 0;
};

class MscsEngine {
 public:
  MscsEngine(const ObjectiveProblem& problem, MscsParams params)
      : problem_(problem),
        params_(std::move(params)),
        rng_(params_.seed),
        eval_(problem_, params_.penalty, rng_, params_.max_fe),
        levy_(params_.levy.lambda) {
    problem_.validate();
    params_.validate();
    alpha_eff_ = effective_alpha(problem_, params_.levy.alpha);
  }

  MscsEngine(const MscsEngine&) = delete;
  MscsEngine& operator=(const MscsEngine&) = delete;

  const MscsState& state() const noexcept { return state_; }
  // Mutable access for callers that seed or inspect a specific configuration.
  MscsState& state() noexcept { return state_; }
  const MscsParams& params() const noexcept { return params_; }
  const Evaluator& evaluator() const noexcept { return eval_; }
  RngStream& rng() noexcept { return rng_; }

  /// Uniform cuckoos (species in order), then w q host eggs (nest by nest).
  void init_state() {
    state_ = MscsState{};
    for (std::size_t s = 0; s < params_.species_count(); ++s) {
      SpeciesPop pop;
      for (std::size_t i = 0; i < params_.species_sizes[s]; ++i) {
        Vec x = random_point(problem_, rng_);
        const double f = eval_(x);
        pop.cuckoos.push_back({std::move(x), f});
      }
      state_.species.push_back(std::move(pop));
    }
    for (std::size_t k = 0; k < params_.nests; ++k) {
      Nest nest;
      for (std::size_t e = 0; e < params_.eggs_per_nest; ++e) {
        Vec x = random_point(problem_, rng_);
        const double f = eval_(x);
        nest.eggs.push_back({std::move(x), f, std::nullopt});
      }
      state_.nests.push_back(std::move(nest));
    }
    for (auto& pop : state_.species) pop.best = best_of(pop.cuckoos);
    refresh_bests();
  }

  /// Cuckoo i of species j visits nest k and lays r eggs. Each egg is a
  /// local walk (eps < p_a) or a Levy flight from the cuckoo. The cuckoo
  /// moves to the egg if it is strictly better than the cuckoo, and the egg
  /// replaces the worst egg of nest k if it is strictly better than it.
  void lay_egg(std::size_t j, std::size_t i, std::size_t k) {
    auto& cuckoo = state_.species.at(j).cuckoos.at(i);
    auto& nest = state_.nests.at(k);
    for (std::size_t egg = 0; egg < params_.eggs_per_visit; ++egg) {
      Vec cand;
      if (rng_.uniform() < params_.p_a)
        cand = walk_candidate(j, cuckoo.x);
      else
        cand = levy_flight(cuckoo.x, levy_scale(j, cuckoo.x), levy_, rng_);
      cand = clamp_and_snap(cand, problem_);
      const double f = eval_(cand);
      const std::size_t w = nest.worst();
      if (f < nest.eggs[w].fitness) nest.eggs[w] = {cand, f, j};
      if (f < cuckoo.f) cuckoo = {std::move(cand), f};
    }
    sync();
  }

  /// Dimension-wise exchange between a random cuckoo of species a and one of
  /// species b under a fresh binary mask. Both results are kept.
  void species_swap(std::size_t a, std::size_t b) {
    if (a == b) throw ParameterError("species swap: species must differ");
    auto& pa = state_.species.at(a);
    auto& pb = state_.species.at(b);
    const auto ia = static_cast<std::size_t>(rng_.below(pa.cuckoos.size()));
    const auto ib = static_cast<std::size_t>(rng_.below(pb.cuckoos.size()));
    const auto mask = random_binary_mask(problem_.dim(), rng_);
    auto [xa, xb] = swap_components(pa.cuckoos[ia].x, pb.cuckoos[ib].x, mask);
    const double fa = eval_(xa);
    const double fb = eval_(xb);
    pa.cuckoos[ia] = {std::move(xa), fa};
    pb.cuckoos[ib] = {std::move(xb), fb};
    sync();
  }

  /// Rebuild nest k when its cuckoo-egg fraction is strictly above 1 - p_a:
  /// q Levy flights from the nest's best egg, all host-owned.
  void abandonment_check(std::size_t k) {
    auto& nest = state_.nests.at(k);
    if (!(nest.cuckoo_fraction() > 1.0 - params_.p_a)) return;
    const Vec origin = nest.eggs[nest.best()].x;
    std::vector<Egg> rebuilt;
    rebuilt.reserve(nest.eggs.size());
    for (std::size_t e = 0; e < nest.eggs.size(); ++e) {
      Vec x = clamp_and_snap(levy_flight(origin, alpha_eff_, levy_, rng_), problem_);
      const double f = eval_(x);
      rebuilt.push_back({std::move(x), f, std::nullopt});
    }
    nest.eggs = std::move(rebuilt);
    sync();
  }

  void generation() {
    const std::size_t n = params_.total_cuckoos();
    for (std::size_t pass = 0; pass < n; ++pass) {
      // One flat draw picks species j with probability n_j / n and a uniform
      // cuckoo inside it.
      auto flat = static_cast<std::size_t>(rng_.below(n));
      std::size_t j = 0;
      while (flat >= params_.species_sizes[j]) flat -= params_.species_sizes[j++];
      const auto k = static_cast<std::size_t>(rng_.below(params_.nests));
      lay_egg(j, flat, k);
    }
    for (std::size_t a = 0; a < params_.species_count(); ++a)
      for (std::size_t b = a + 1; b < params_.species_count(); ++b) species_swap(a, b);
    for (std::size_t k = 0; k < params_.nests; ++k) abandonment_check(k);
    apply_elitism();
    ++state_.iteration;
  }

  TrialResult run() {
    std::vector<double> trace;
    std::size_t fe_at_start = 0;
    bool initialized = false;
    try {
      init_state();
      initialized = true;
      while (state_.iteration < params_.t_max) {
        fe_at_start = eval_.used();
        generation();
        trace.push_back(eval_.best().f);
      }
    } catch (const BudgetExhausted&) {
      sync();
      if (initialized && eval_.used() > fe_at_start) {
        ++state_.iteration;
        trace.push_back(eval_.best().f);
      }
    } catch (const EvaluationError& e) {
      throw TrialAborted(e.what(), state_.iteration, eval_.used());
    } catch (const DivergenceError& e) {
      throw TrialAborted(e.what(), state_.iteration, eval_.used());
    }
    return make_trial_result(eval_, std::move(trace), state_.iteration);
  }

  /// x_a' = x_a (1 - Q) + x_b Q and x_b' = x_a Q + x_b (1 - Q), componentwise.
  static std::pair<Vec, Vec> swap_components(const Vec& xa, const Vec& xb, const std::vector<int>& mask) {
    Vec a = xa, b = xb;
    for (std::size_t d = 0; d < mask.size(); ++d)
      if (mask[d]) std::swap(a[d], b[d]);
    return {std::move(a), std::move(b)};
  }

 private:
  static Solution best_of(const std::vector<Solution>& pool) {
    return *std::min_element(pool.begin(), pool.end(),
                             [](const Solution& l, const Solution& r) { return l.f < r.f; });
  }

  // Local walk with the Heaviside factor fixed to 1. Partners come from the
  // cuckoo's own species, or from all cuckoos when the species has fewer
  // than three members; with fewer than three cuckoos overall the walk is
  // the identity.
  Vec walk_candidate(std::size_t j, const Vec& xi) {
    const auto& own = state_.species[j].cuckoos;
    if (own.size() >= 3) {
      const auto [a, b] = distinct_random_pair(own.size(), rng_);
      return local_walk_step(xi, own[a].x, own[b].x, params_.levy.beta, rng_);
    }
    const std::size_t n = params_.total_cuckoos();
    if (n < 3) return xi;
    const auto [a, b] = distinct_random_pair(n, rng_);
    return local_walk_step(xi, flat_cuckoo(a).x, flat_cuckoo(b).x, params_.levy.beta, rng_);
  }

  Vec levy_scale(std::size_t j, const Vec& xi) const {
    if (params_.step_scale == StepScale::domain_width) return alpha_eff_;
    return distance_alpha(xi, state_.species[j].best.x, params_.levy.alpha);
  }

  const Solution& flat_cuckoo(std::size_t idx) const {
    for (const auto& pop : state_.species) {
      if (idx < pop.cuckoos.size()) return pop.cuckoos[idx];
      idx -= pop.cuckoos.size();
    }
    throw ParameterError("mscs: cuckoo index out of range");
  }

  // Species bests are carried over: a species that lost its best (swaps are
  // unconditional) gets it back in place of its worst member. The best host
  // egg is carried over the same way, in place of the worst egg of all nests.
  void apply_elitism() {
    for (auto& pop : state_.species) {
      const Solution current = best_of(pop.cuckoos);
      if (pop.best.f < current.f) {
        auto worst = std::max_element(pop.cuckoos.begin(), pop.cuckoos.end(),
                                      [](const Solution& l, const Solution& r) { return l.f < r.f; });
        *worst = pop.best;
      } else {
        pop.best = current;
      }
    }
    const Solution stored_host = state_.g_h;
    refresh_bests();
    if (stored_host.f < state_.g_h.f) {
      std::size_t wk = 0, we = 0;
      for (std::size_t k = 0; k < state_.nests.size(); ++k) {
        const std::size_t e = state_.nests[k].worst();
        if (state_.nests[k].eggs[e].fitness > state_.nests[wk].eggs[we].fitness) {
          wk = k;
          we = e;
        }
      }
      state_.nests[wk].eggs[we] = {stored_host.x, stored_host.f, std::nullopt};
      state_.g_h = stored_host;
    }
  }

  void refresh_bests() {
    state_.g_cs = Solution{};
    for (const auto& pop : state_.species)
      if (pop.best.f < state_.g_cs.f) state_.g_cs = pop.best;
    state_.g_h = Solution{};
    for (const auto& nest : state_.nests)
      for (const auto& egg : nest.eggs)
        if (egg.host_owned() && egg.fitness < state_.g_h.f) state_.g_h = {egg.x, egg.fitness};
    sync();
  }

  void sync() {
    state_.overall_best = eval_.best();
    state_.fe_used = eval_.used();
  }

  const ObjectiveProblem& problem_;
  MscsParams params_;
  RngStream rng_;
  Evaluator eval_;
  LevySampler levy_;
  Vec alpha_eff_;
  MscsState state_;
};

inline TrialResult mscs_run(const ObjectiveProblem& problem, const MscsParams& params) {
  MscsEngine engine(problem, params);
  return engine.run();
}

}  // namespace mscs
