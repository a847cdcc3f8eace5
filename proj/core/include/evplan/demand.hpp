#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "evplan/geometry.hpp"
#include "evplan/network.hpp"
#include "evplan/rng.hpp"

namespace evplan {

// Raised when demand generation runs out of attempts.
struct ExhaustionError : Error {
  using Error::Error;
};

struct EvParams {
  double battery_kwh = 50.0;
  double consumption_kwh_per_km = 0.25;
  double range_km() const { return battery_kwh / consumption_kwh_per_km; }
};

// One unit of travel demand: an ordered node walk plus the battery energy
// the vehicle starts with.
struct Route {
  std::vector<int> nodes;
  Zone origin_zone = Zone::Other;
  Zone dest_zone = Zone::Other;
  double initial_soc_kwh = 0.0;
};

// Polygon constraining the next node during route growth. Quadrilateral when
// the current node sits in a corner region of the destination bounding box,
// pentagon in an edge region, and one of four candidate quadrilaterals when
// the current node is inside the box.
struct SpecialArea {
  std::vector<Point> polygon;
  // True when no two inside-the-box quadrilaterals cleared the 40% node
  // containment threshold and the two best ones were used instead.
  bool fallback_used = false;
};

struct DemandConfig {
  int n_routes = 10000;
  // Probabilities by kAllZones order (residential, commercial, industrial,
  // other); each vector must sum to 1.
  std::array<double, kZoneCount> origin_zone_probs{0.45, 0.30, 0.15, 0.10};
  std::array<double, kZoneCount> dest_zone_probs{0.45, 0.30, 0.15, 0.10};
  int min_nodes = 2;
  int max_nodes = 24;
  // Chance that an accepted route keeps growing into a longer variant.
  double continue_prob = 0.5;
  // Growth attempts allowed between two accepted routes.
  int max_attempts_per_route = 20000;
  // Assumed distance to the nearest charging opportunity when lower-bounding
  // the initial SOC; stations do not exist yet at generation time, so the
  // maximum branch length stands in.
  double station_reach_km = 7.0;
};

// The special area for a growth step. `current` is the node the route ends
// at; the destination area is the axis-aligned bounding box of dest_zone's
// nodes. Throws Error when that box degenerates to a single point.
SpecialArea special_area(const Network& net, int current, Zone dest_zone,
                         Rng& rng);

// Nodes that may extend `prefix`: adjacent to its last node, inside or on
// the boundary of `area`, and not visited yet. Ascending ids; may be empty.
std::vector<int> eligible_next_nodes(const Network& net,
                                     std::span<const int> prefix,
                                     const SpecialArea& area);

// Inclusive-exclusive SOC bounds [a, b) used by assign_initial_soc:
// b = energy to finish the route, a = energy to leave the origin and reach a
// station within station_reach_km, capped at 0.99 * b.
std::pair<double, double> initial_soc_bounds(const Route& route,
                                             const Network& net,
                                             const EvParams& ev,
                                             double station_reach_km);

// Uniform draw from initial_soc_bounds. Always strictly below the energy
// needed to complete the route, so every route demands a charge.
double assign_initial_soc(const Route& route, const Network& net,
                          const EvParams& ev, double station_reach_km,
                          Rng& rng);

// Grows cfg.n_routes pairwise-distinct routes (distinct node sequences) with
// assigned initial SOC. Deterministic per seed. Throws ExhaustionError when
// cfg.max_attempts_per_route growth attempts pass without an acceptance.
std::vector<Route> generate_routes(const Network& net, const DemandConfig& cfg,
                                   const EvParams& ev, std::uint64_t seed);

// Number of routes traversing each branch, aligned with net.branches().
// Throws Error when a route uses a branch that does not exist.
std::vector<long> traffic_flow(const Network& net, std::span<const Route> routes);

// Sum of branch lengths along the route. Throws Error on a missing branch.
double route_length_km(const Network& net, const Route& route);

}  // namespace evplan
