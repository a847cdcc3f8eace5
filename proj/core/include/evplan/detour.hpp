#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evplan/demand.hpp"
#include "evplan/network.hpp"
#include "evplan/rng.hpp"

namespace evplan {

// Distances within this tolerance compare equal when ranking detour
// candidates, so algebraically tied stations stay tied under floating-point
// summation.
inline constexpr double kTieEpsKm = 1e-9;

// A charging-station deployment plan: ascending, distinct node ids.
struct StationPlan {
  std::vector<int> stations;

  // Sorts and verifies distinctness; throws Error on duplicates.
  static StationPlan of(std::vector<int> ids);

  int size() const { return static_cast<int>(stations.size()); }
  bool contains(int node) const;
  bool operator==(const StationPlan&) const = default;
};

struct SimParams {
  EvParams ev{};
};

// What happened at one visited route node.
struct DetourEvent {
  int node_index = 0;            // position within the route
  bool deficit = false;          // SOC could not cover the next branch
  std::vector<int> accessible;   // stations reachable with the remaining SOC
  int chosen_station = -1;       // -1 when no detour happened
  double l_detour_km = 0.0;
  double l_rest_km = 0.0;        // remaining route length at a give-up record
  // True when every reachable station was rejected because its onward leg to
  // the next route node exceeds a full battery.
  bool infeasible_leg = false;
};

// Full simulation result for one route under one plan.
struct RouteOutcome {
  std::vector<double> recorded_ls;  // one candidate L per give-up point plus,
                                    // if reached, the completion value
  double l_min_km = 0.0;
  bool completed = false;
  std::vector<DetourEvent> events;
};

// Plan stations reachable from `node` with the remaining SOC (a station at
// the node itself is reachable at any SOC >= 0). Ascending ids.
std::vector<int> accessible_stations(const DistanceMatrix& dm,
                                     const StationPlan& plan, int node,
                                     double soc_kwh, const EvParams& ev);

struct StationChoice {
  int station = -1;
  double l_detour_km = 0.0;
  // Stations tied on both the detour length and the onward leg; the winner
  // is drawn uniformly from this set.
  std::vector<int> tie_set;
};

// Detour target among `candidates`: minimal d[node][c] + d[c][next_node],
// then minimal d[c][next_node], then a uniform random tie-break. Throws
// Error when candidates is empty.
StationChoice select_station(const DistanceMatrix& dm,
                             std::span<const int> candidates, int node,
                             int next_node, Rng& rng);

// Walks the route, detouring to charge whenever the SOC cannot cover the
// next branch. Records a no-detour candidate L at every deficit and the
// detour total on completion; l_min_km is the minimum over all records.
// Tie-breaks draw from substreams derived from (route_seed, node index), so
// outcomes are reproducible and independent of evaluation order.
RouteOutcome simulate_route(const Network& net, const DistanceMatrix& dm,
                            const StationPlan& plan, const Route& route,
                            const SimParams& sim, std::uint64_t route_seed);

// Plan fitness: sum of per-route l_min_km, route seeds derived from
// (seed, route index). Lower is better.
double evaluate_plan(const Network& net, const DistanceMatrix& dm,
                     const StationPlan& plan, std::span<const Route> routes,
                     const SimParams& sim, std::uint64_t seed);

// Reusable fitness engine: routes are validated and flattened once, then
// many plans can be scored against them, optionally in parallel. Results are
// identical to evaluate_plan for the same seed regardless of thread count.
class PlanEvaluator {
 public:
  // threads <= 0 selects EVPLAN_THREADS or the hardware concurrency.
  PlanEvaluator(const Network& net, const DistanceMatrix& dm,
                std::span<const Route> routes, SimParams sim,
                std::uint64_t seed, int threads = 0);

  double fitness(const StationPlan& plan) const;

  // Scores a batch of plans in parallel (one worker per plan).
  std::vector<double> fitness_many(std::span<const StationPlan> plans) const;

  int route_count() const { return static_cast<int>(routes_.size()); }
  int threads() const { return threads_; }

 private:
  struct FlatRoute {
    std::vector<int> nodes;
    std::vector<double> step_km;  // branch length to the next node
    std::vector<double> rest_km;  // remaining route length from each node
    double soc0_kwh = 0.0;
  };

  const DistanceMatrix* dm_;
  SimParams sim_;
  std::uint64_t seed_;
  int threads_;
  std::vector<FlatRoute> routes_;
};

}  // namespace evplan
