#include "evplan/detour.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace evplan {

StationPlan StationPlan::of(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error("station plan contains duplicate node ids");
  }
  return {std::move(ids)};
}

bool StationPlan::contains(int node) const {
  return std::binary_search(stations.begin(), stations.end(), node);
}

std::vector<int> accessible_stations(const DistanceMatrix& dm,
                                     const StationPlan& plan, int node,
                                     double soc_kwh, const EvParams& ev) {
  std::vector<int> out;
  const double* row = dm.row(node);
  for (int c : plan.stations) {
    if (ev.consumption_kwh_per_km * row[c] <= soc_kwh) out.push_back(c);
  }
  return out;
}

namespace {

// Scan result over one candidate set: the minimal detour sum, the minimal
// onward leg among detour-sum ties, and the size of the final tie set.
struct ScanStats {
  double best_sum = std::numeric_limits<double>::infinity();
  double best_onward = std::numeric_limits<double>::infinity();
  int tie_count = 0;
};

ScanStats scan_candidates(const double* row_node, const double* row_next,
                          std::span<const int> candidates) {
  ScanStats s;
  for (int c : candidates) {
    s.best_sum = std::min(s.best_sum, row_node[c] + row_next[c]);
  }
  for (int c : candidates) {
    if (row_node[c] + row_next[c] <= s.best_sum + kTieEpsKm) {
      s.best_onward = std::min(s.best_onward, row_next[c]);
    }
  }
  for (int c : candidates) {
    if (row_node[c] + row_next[c] <= s.best_sum + kTieEpsKm &&
        row_next[c] <= s.best_onward + kTieEpsKm) {
      ++s.tie_count;
    }
  }
  return s;
}

bool is_tied(const double* row_node, const double* row_next, int c,
             const ScanStats& s) {
  return row_node[c] + row_next[c] <= s.best_sum + kTieEpsKm &&
         row_next[c] <= s.best_onward + kTieEpsKm;
}

int tie_member(const double* row_node, const double* row_next,
               std::span<const int> candidates, const ScanStats& s,
               int index) {
  int seen = 0;
  for (int c : candidates) {
    if (is_tied(row_node, row_next, c, s)) {
      if (seen == index) return c;
      ++seen;
    }
  }
  return -1;
}

}  // namespace

StationChoice select_station(const DistanceMatrix& dm,
                             std::span<const int> candidates, int node,
                             int next_node, Rng& rng) {
  if (candidates.empty()) {
    throw Error("select_station called with an empty candidate set");
  }
  const double* row_node = dm.row(node);
  const double* row_next = dm.row(next_node);
  ScanStats s = scan_candidates(row_node, row_next, candidates);

  StationChoice choice;
  for (int c : candidates) {
    if (is_tied(row_node, row_next, c, s)) choice.tie_set.push_back(c);
  }
  int pick = choice.tie_set.size() > 1
                 ? static_cast<int>(rng.index(choice.tie_set.size()))
                 : 0;
  choice.station = choice.tie_set[pick];
  choice.l_detour_km = row_node[choice.station] + row_next[choice.station] -
                       dm.at(node, next_node);
  return choice;
}

namespace {

// Sinks decide how much the walk materializes: TraceSink builds the full
// RouteOutcome, MinSink only tracks the running minimum for fitness sums.
struct MinSink {
  double l_min = std::numeric_limits<double>::infinity();
  static constexpr bool kTrace = false;
  void record(double l) { l_min = std::min(l_min, l); }
  void step(int, bool, double) {}
  void detour(int, double) {}
  void no_station(bool) {}
  void set_accessible(std::vector<int>&&) {}
};

struct TraceSink {
  RouteOutcome out;
  static constexpr bool kTrace = true;
  void record(double l) { out.recorded_ls.push_back(l); }
  void step(int node_index, bool deficit, double l_rest) {
    out.events.push_back({node_index, deficit, {}, -1, 0.0, l_rest, false});
  }
  void detour(int station, double l_detour) {
    out.events.back().chosen_station = station;
    out.events.back().l_detour_km = l_detour;
  }
  void no_station(bool infeasible_leg) {
    out.events.back().infeasible_leg = infeasible_leg;
  }
  void set_accessible(std::vector<int>&& acc) {
    out.events.back().accessible = std::move(acc);
  }
};

struct WalkInput {
  std::span<const int> nodes;
  std::span<const double> step_km;
  std::span<const double> rest_km;
  double soc0_kwh;
};

// Returns true when the route was completed.
template <class Sink>
bool walk_route(const DistanceMatrix& dm, std::span<const int> stations,
                const EvParams& ev, const WalkInput& in,
                std::uint64_t route_seed, Sink& sink) {
  const double consumption = ev.consumption_kwh_per_km;
  double soc = in.soc0_kwh;
  double detour_total = 0.0;
  const int last = static_cast<int>(in.nodes.size()) - 1;

  thread_local std::vector<int> feasible;

  for (int n = 0; n < last; ++n) {
    const int node = in.nodes[n];
    const int next = in.nodes[n + 1];
    const double need = consumption * in.step_km[n];
    if (need <= soc) {
      sink.step(n, false, 0.0);
      soc -= need;
      continue;
    }

    // Deficit: record the give-up candidate first, then try to detour.
    sink.step(n, true, in.rest_km[n]);
    sink.record(in.rest_km[n] + detour_total);

    const double* row_node = dm.row(node);
    const double* row_next = dm.row(next);
    bool any_reachable = false;
    feasible.clear();
    for (int c : stations) {
      if (consumption * row_node[c] > soc) continue;
      any_reachable = true;
      if (consumption * row_next[c] <= ev.battery_kwh) feasible.push_back(c);
    }
    if constexpr (Sink::kTrace) {
      std::vector<int> reachable;
      for (int c : stations) {
        if (consumption * row_node[c] <= soc) reachable.push_back(c);
      }
      sink.set_accessible(std::move(reachable));
    }

    if (feasible.empty()) {
      // No usable station: none reachable, or every reachable one has an
      // onward leg beyond a full battery.
      sink.no_station(any_reachable);
      return false;
    }

    ScanStats s = scan_candidates(row_node, row_next, feasible);
    int pick = 0;
    if (s.tie_count > 1) {
      Rng tie_rng(derive_seed(route_seed, {static_cast<std::uint64_t>(n)}));
      pick = static_cast<int>(tie_rng.index(s.tie_count));
    }
    const int station = tie_member(row_node, row_next, feasible, s, pick);
    const double l_detour =
        row_node[station] + row_next[station] - dm.at(node, next);

    soc -= consumption * row_node[station];
    soc = ev.battery_kwh;  // charge to full
    soc -= consumption * row_next[station];
    detour_total += l_detour;
    sink.detour(station, l_detour);
  }

  sink.step(last, false, 0.0);
  sink.record(detour_total);
  return true;
}

void flatten_route(const Network& net, std::span<const int> nodes,
                   std::vector<double>& step_km, std::vector<double>& rest_km) {
  if (nodes.size() < 2) {
    throw Error("route must contain at least two nodes");
  }
  const std::size_t steps = nodes.size() - 1;
  step_km.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    step_km[i] = net.branch_length(nodes[i], nodes[i + 1]);
  }
  rest_km.assign(nodes.size(), 0.0);
  for (std::size_t i = steps; i-- > 0;) {
    rest_km[i] = rest_km[i + 1] + step_km[i];
  }
}

}  // namespace

RouteOutcome simulate_route(const Network& net, const DistanceMatrix& dm,
                            const StationPlan& plan, const Route& route,
                            const SimParams& sim, std::uint64_t route_seed) {
  std::vector<double> step_km;
  std::vector<double> rest_km;
  flatten_route(net, route.nodes, step_km, rest_km);
  WalkInput in{route.nodes, step_km, rest_km, route.initial_soc_kwh};
  TraceSink sink;
  sink.out.completed =
      walk_route(dm, plan.stations, sim.ev, in, route_seed, sink);
  sink.out.l_min_km = *std::min_element(sink.out.recorded_ls.begin(),
                                        sink.out.recorded_ls.end());
  return sink.out;
}

double evaluate_plan(const Network& net, const DistanceMatrix& dm,
                     const StationPlan& plan, std::span<const Route> routes,
                     const SimParams& sim, std::uint64_t seed) {
  double total = 0.0;
  std::vector<double> step_km;
  std::vector<double> rest_km;
  for (std::size_t r = 0; r < routes.size(); ++r) {
    try {
      flatten_route(net, routes[r].nodes, step_km, rest_km);
      WalkInput in{routes[r].nodes, step_km, rest_km,
                   routes[r].initial_soc_kwh};
      MinSink sink;
      walk_route(dm, plan.stations, sim.ev, in,
                 derive_seed(seed, {static_cast<std::uint64_t>(r)}), sink);
      total += sink.l_min;
    } catch (const Error& e) {
      throw Error("route " + std::to_string(r) + ": " + e.what());
    }
  }
  return total;
}

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EVPLAN_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

PlanEvaluator::PlanEvaluator(const Network& net, const DistanceMatrix& dm,
                             std::span<const Route> routes, SimParams sim,
                             std::uint64_t seed, int threads)
    : dm_(&dm), sim_(sim), seed_(seed), threads_(resolve_threads(threads)) {
  routes_.reserve(routes.size());
  for (std::size_t r = 0; r < routes.size(); ++r) {
    try {
      FlatRoute flat;
      flat.nodes = routes[r].nodes;
      flat.soc0_kwh = routes[r].initial_soc_kwh;
      flatten_route(net, flat.nodes, flat.step_km, flat.rest_km);
      routes_.push_back(std::move(flat));
    } catch (const Error& e) {
      throw Error("route " + std::to_string(r) + ": " + e.what());
    }
  }
}

double PlanEvaluator::fitness(const StationPlan& plan) const {
  double total = 0.0;
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    const FlatRoute& flat = routes_[r];
    WalkInput in{flat.nodes, flat.step_km, flat.rest_km, flat.soc0_kwh};
    MinSink sink;
    walk_route(*dm_, plan.stations, sim_.ev, in,
               derive_seed(seed_, {static_cast<std::uint64_t>(r)}), sink);
    total += sink.l_min;
  }
  return total;
}

std::vector<double> PlanEvaluator::fitness_many(
    std::span<const StationPlan> plans) const {
  std::vector<double> result(plans.size(), 0.0);
  const int workers = std::min<int>(threads_, static_cast<int>(plans.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < plans.size(); ++i) {
      result[i] = fitness(plans[i]);
    }
    return result;
  }
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= plans.size()) return;
        try {
          result[i] = fitness(plans[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace evplan
