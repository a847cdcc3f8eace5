#include "evplan/ga.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace evplan {
namespace {

struct PlanHash {
  std::size_t operator()(const std::vector<int>& ids) const {
    std::uint64_t h = 14695981039346656037ULL;
    for (int v : ids) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Uniform sorted k-subset of {0..n-1} (Floyd's algorithm).
std::vector<int> sample_subset(int n, int k, Rng& rng) {
  std::unordered_set<int> chosen;
  chosen.reserve(k);
  std::vector<int> out;
  out.reserve(k);
  for (int j = n - k; j < n; ++j) {
    int t = static_cast<int>(rng.index(static_cast<std::size_t>(j) + 1));
    if (chosen.contains(t)) t = j;
    chosen.insert(t);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_chromosome_size(const StationPlan& a, const StationPlan& b) {
  if (a.size() != b.size()) {
    throw Error("crossover requires equally sized plans (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                ")");
  }
}

}  // namespace

std::uint64_t subset_count_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // C(n,k) = prod_{i=1..k} (n-k+i)/i, integral at every step.
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c >= cap) return cap;
  }
  return static_cast<std::uint64_t>(c);
}

Population init_population(int n_candidates, const GaConfig& cfg, Rng& rng) {
  if (cfg.k < 1 || cfg.k > n_candidates) {
    throw Error("plan size k must be within [1, n_candidates]");
  }
  if (cfg.pop_size < 1) throw Error("pop_size must be >= 1");
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t space = subset_count_capped(n_candidates, cfg.k, cap);
  if (static_cast<std::uint64_t>(cfg.pop_size) > space) {
    throw Error("population of " + std::to_string(cfg.pop_size) +
                " distinct plans is infeasible: only " +
                std::to_string(space) + " " + std::to_string(cfg.k) +
                "-subsets of " + std::to_string(n_candidates) +
                " candidates exist");
  }

  Population pop;
  pop.individuals.reserve(cfg.pop_size);
  std::unordered_set<std::vector<int>, PlanHash> seen;
  seen.reserve(cfg.pop_size * 2);
  // Rejection sampling; the uniqueness check makes this a coupon-collector
  // walk when pop_size approaches the subset space, still bounded below.
  const long long max_tries =
      1000LL + 400LL * static_cast<long long>(cfg.pop_size);
  long long tries = 0;
  while (static_cast<int>(pop.individuals.size()) < cfg.pop_size) {
    if (++tries > max_tries) {
      throw Error("init_population failed to collect " +
                  std::to_string(cfg.pop_size) + " distinct plans after " +
                  std::to_string(max_tries) + " draws");
    }
    std::vector<int> ids = sample_subset(n_candidates, cfg.k, rng);
    if (seen.insert(ids).second) {
      pop.individuals.push_back(StationPlan{std::move(ids)});
    }
  }
  return pop;
}

std::vector<double> selection_weights(std::span<const double> fitnesses,
                                      double floor_fraction) {
  const auto [min_it, max_it] =
      std::minmax_element(fitnesses.begin(), fitnesses.end());
  std::vector<double> weights(fitnesses.size(), 1.0);
  if (fitnesses.empty() || *max_it <= *min_it) return weights;  // uniform
  const double spread = *max_it - *min_it;
  const double floor = floor_fraction * spread;
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    weights[i] = (*max_it - fitnesses[i]) + floor;
  }
  return weights;
}

Population roulette_select(const Population& pop, double floor_fraction,
                           Rng& rng) {
  if (pop.individuals.size() != pop.fitnesses.size()) {
    throw Error("population fitnesses not computed");
  }
  std::vector<double> weights = selection_weights(pop.fitnesses, floor_fraction);
  std::vector<double> cumulative(weights.size());
  std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
  const double total = cumulative.back();

  Population next;
  next.individuals.reserve(pop.individuals.size());
  next.fitnesses.reserve(pop.individuals.size());
  for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
    double r = rng.uniform() * total;
    std::size_t j = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), r) -
        cumulative.begin());
    if (j >= pop.individuals.size()) j = pop.individuals.size() - 1;
    next.individuals.push_back(pop.individuals[j]);
    next.fitnesses.push_back(pop.fitnesses[j]);
  }
  return next;
}

std::pair<StationPlan, StationPlan> crossover_children(
    const std::vector<int>& mutual, std::span<const int> shuffled_exclusive) {
  const std::size_t half = shuffled_exclusive.size() / 2;
  StationPlan c1{mutual};
  StationPlan c2{mutual};
  c1.stations.insert(c1.stations.end(), shuffled_exclusive.begin(),
                     shuffled_exclusive.begin() + half);
  c2.stations.insert(c2.stations.end(), shuffled_exclusive.begin() + half,
                     shuffled_exclusive.end());
  std::sort(c1.stations.begin(), c1.stations.end());
  std::sort(c2.stations.begin(), c2.stations.end());
  return {std::move(c1), std::move(c2)};
}

std::pair<StationPlan, StationPlan> crossover(const StationPlan& a,
                                              const StationPlan& b, Rng& rng) {
  check_chromosome_size(a, b);
  std::vector<int> mutual;
  std::set_intersection(a.stations.begin(), a.stations.end(),
                        b.stations.begin(), b.stations.end(),
                        std::back_inserter(mutual));
  std::vector<int> exclusive;
  std::set_symmetric_difference(a.stations.begin(), a.stations.end(),
                                b.stations.begin(), b.stations.end(),
                                std::back_inserter(exclusive));
  rng.shuffle(exclusive);
  return crossover_children(mutual, exclusive);
}

StationPlan mutate(const StationPlan& plan, int n_candidates, Rng& rng) {
  const int k = plan.size();
  if (k >= n_candidates) {
    throw Error("mutation impossible: all " + std::to_string(n_candidates) +
                " candidate nodes are already in the plan");
  }
  const std::size_t gene = rng.index(static_cast<std::size_t>(k));
  // Uniform node outside the plan: draw a rank among outsiders, then walk
  // the sorted plan to map it back to a node id.
  int rank =
      static_cast<int>(rng.index(static_cast<std::size_t>(n_candidates - k)));
  int candidate = rank;
  for (int s : plan.stations) {
    if (s <= candidate) ++candidate;
  }
  StationPlan out = plan;
  out.stations[gene] = candidate;
  std::sort(out.stations.begin(), out.stations.end());
  return out;
}

GaResult run_ga(const BatchEvaluator& evaluate, int n_candidates,
                const GaConfig& cfg, const IterationCallback& on_iteration) {
  if (cfg.p_cross < 0.0 || cfg.p_cross > 1.0 || cfg.p_mut < 0.0 ||
      cfg.p_mut > 1.0) {
    throw Error("crossover/mutation probabilities must lie in [0, 1]");
  }
  Rng rng(cfg.seed);
  Population pop = init_population(n_candidates, cfg, rng);

  GaResult result;
  result.best_km = std::numeric_limits<double>::infinity();

  auto score_and_record = [&](int iteration) {
    pop.fitnesses = evaluate(pop.individuals);
    if (pop.fitnesses.size() != pop.individuals.size()) {
      throw Error("evaluator returned a mismatched fitness count");
    }
    std::size_t best_idx = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < pop.fitnesses.size(); ++i) {
      sum += pop.fitnesses[i];
      if (pop.fitnesses[i] < pop.fitnesses[best_idx]) best_idx = i;
    }
    if (pop.fitnesses[best_idx] < result.best_km) {
      result.best_km = pop.fitnesses[best_idx];
      result.best = pop.individuals[best_idx];
    }
    GaIteration entry{iteration, pop.fitnesses[best_idx],
                      sum / static_cast<double>(pop.fitnesses.size()),
                      result.best_km, result.best};
    result.history.entries.push_back(entry);
    if (on_iteration) on_iteration(result.history.entries.back());
  };

  score_and_record(0);
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    pop = roulette_select(pop, cfg.selection_floor, rng);

    // Random disjoint pairing; each pair crosses with probability p_cross.
    std::vector<std::size_t> order(pop.individuals.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t p = 0; p + 1 < order.size(); p += 2) {
      if (!rng.bernoulli(cfg.p_cross)) continue;
      auto [c1, c2] =
          crossover(pop.individuals[order[p]], pop.individuals[order[p + 1]], rng);
      pop.individuals[order[p]] = std::move(c1);
      pop.individuals[order[p + 1]] = std::move(c2);
    }

    if (cfg.k < n_candidates) {
      for (auto& individual : pop.individuals) {
        if (rng.bernoulli(cfg.p_mut)) {
          individual = mutate(individual, n_candidates, rng);
        }
      }
    }

    score_and_record(iter);
  }
  return result;
}

}  // namespace evplan
