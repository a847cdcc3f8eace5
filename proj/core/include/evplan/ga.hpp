#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "evplan/detour.hpp"
#include "evplan/rng.hpp"

namespace evplan {

struct GaConfig {
  int pop_size = 1500;
  int k = 15;  // stations per plan
  double p_cross = 0.3;
  double p_mut = 0.2;
  int max_iter = 300;
  std::uint64_t seed = 1;
  // Fraction of the fitness spread kept as the minimum selection weight so
  // the worst individual is never excluded outright.
  double selection_floor = 0.01;
};

struct Population {
  std::vector<StationPlan> individuals;
  std::vector<double> fitnesses;  // parallel to individuals; empty until scored
};

struct GaIteration {
  int iteration = 0;
  double best_km = 0.0;
  double mean_km = 0.0;
  double best_so_far_km = 0.0;
  StationPlan best_so_far;
};

struct GaHistory {
  std::vector<GaIteration> entries;
};

struct GaResult {
  StationPlan best;
  double best_km = 0.0;
  GaHistory history;
};

// Scores a batch of plans; must be deterministic for a fixed master seed.
using BatchEvaluator =
    std::function<std::vector<double>(std::span<const StationPlan>)>;
using IterationCallback = std::function<void(const GaIteration&)>;

// C(n, k) saturated at `cap`.
std::uint64_t subset_count_capped(int n, int k, std::uint64_t cap);

// pop_size pairwise-distinct sorted k-subsets of {0..n_candidates-1}.
// Throws Error when pop_size exceeds C(n_candidates, k).
Population init_population(int n_candidates, const GaConfig& cfg, Rng& rng);

// Selection weight per individual: (f_max - f_i) + floor_fraction *
// (f_max - f_min); all equal when the population has no fitness spread.
std::vector<double> selection_weights(std::span<const double> fitnesses,
                                      double floor_fraction);

// Fitness-proportional resampling with replacement (inverted weights, so
// smaller fitness wins more often). Keeps the population size.
Population roulette_select(const Population& pop, double floor_fraction,
                           Rng& rng);

// Children from the mutual part plus one half each of the shuffled
// exclusive part. Exposed for direct testing of the split rule.
std::pair<StationPlan, StationPlan> crossover_children(
    const std::vector<int>& mutual, std::span<const int> shuffled_exclusive);

// Set-based crossover: mutual genes are kept, exclusive genes are shuffled
// and split half/half between the two children.
std::pair<StationPlan, StationPlan> crossover(const StationPlan& a,
                                              const StationPlan& b, Rng& rng);

// Replaces one uniformly chosen gene with a uniformly chosen outside node.
// Throws Error when every candidate node is already in the plan.
StationPlan mutate(const StationPlan& plan, int n_candidates, Rng& rng);

// Full loop: evaluate, select, pair-and-cross, mutate, repeat. History gets
// one entry for the initial population and one per iteration. The best plan
// ever seen is tracked outside the population (no elitism inside it).
GaResult run_ga(const BatchEvaluator& evaluate, int n_candidates,
                const GaConfig& cfg, const IterationCallback& on_iteration = {});

}  // namespace evplan
