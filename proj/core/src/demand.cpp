#include "evplan/demand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

namespace evplan {
namespace {

struct BoundingBox {
  double xmin, ymin, xmax, ymax;
};

BoundingBox zone_box(const Network& net, Zone zone) {
  const auto& ids = net.zone_nodes(zone);
  if (ids.empty()) throw Error("zone has no nodes: " + std::string(to_string(zone)));
  BoundingBox box{std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (int id : ids) {
    const Node& n = net.nodes()[id];
    box.xmin = std::min(box.xmin, n.x);
    box.ymin = std::min(box.ymin, n.y);
    box.xmax = std::max(box.xmax, n.x);
    box.ymax = std::max(box.ymax, n.y);
  }
  return box;
}

// Count of zone nodes inside the polygon (boundary inclusive).
int contained_zone_nodes(const Network& net, Zone zone,
                         std::span<const Point> polygon) {
  int count = 0;
  for (int id : net.zone_nodes(zone)) {
    const Node& n = net.nodes()[id];
    if (point_in_polygon(polygon, {n.x, n.y})) ++count;
  }
  return count;
}

std::vector<Point> polygon_of(const Point& current,
                              std::span<const Point> corners) {
  std::vector<Point> pts;
  pts.reserve(corners.size() + 1);
  pts.push_back(current);
  pts.insert(pts.end(), corners.begin(), corners.end());
  return angle_sorted(std::move(pts));
}

Zone sample_zone(const std::array<double, kZoneCount>& probs, Rng& rng) {
  double r = rng.uniform();
  double acc = 0.0;
  for (int z = 0; z < kZoneCount; ++z) {
    acc += probs[z];
    if (r < acc) return static_cast<Zone>(z);
  }
  return static_cast<Zone>(kZoneCount - 1);
}

struct RouteKeyHash {
  std::size_t operator()(const std::vector<int>& nodes) const {
    std::uint64_t h = 14695981039346656037ULL;
    for (int v : nodes) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

SpecialArea special_area(const Network& net, int current, Zone dest_zone,
                         Rng& rng) {
  BoundingBox box = zone_box(net, dest_zone);
  if (box.xmin == box.xmax && box.ymin == box.ymax) {
    throw Error("destination area degenerates to a single point; cannot form "
                "a special area for zone " + std::string(to_string(dest_zone)));
  }
  const Node& cur = net.nodes()[current];
  const Point c{cur.x, cur.y};
  const std::array<Point, 4> corners{Point{box.xmin, box.ymin},
                                     Point{box.xmax, box.ymin},
                                     Point{box.xmax, box.ymax},
                                     Point{box.xmin, box.ymax}};

  bool x_out = c.x < box.xmin || c.x > box.xmax;
  bool y_out = c.y < box.ymin || c.y > box.ymax;

  if (x_out && y_out) {
    // Corner region: quadrilateral with the three corners farthest away.
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < corners.size(); ++i) {
      double d = std::hypot(corners[i].x - c.x, corners[i].y - c.y);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    std::vector<Point> far;
    for (std::size_t i = 0; i < corners.size(); ++i) {
      if (i != nearest) far.push_back(corners[i]);
    }
    return {polygon_of(c, far), false};
  }
  if (x_out || y_out) {
    // Edge region: pentagon over all four corners.
    return {polygon_of(c, corners), false};
  }

  // Inside the box: four candidate quadrilaterals, one per omitted corner.
  struct Candidate {
    std::vector<Point> polygon;
    int contained;
  };
  std::vector<Candidate> candidates;
  for (std::size_t omit = 0; omit < corners.size(); ++omit) {
    std::vector<Point> kept;
    for (std::size_t i = 0; i < corners.size(); ++i) {
      if (i != omit) kept.push_back(corners[i]);
    }
    std::vector<Point> poly = polygon_of(c, kept);
    int contained = contained_zone_nodes(net, dest_zone, poly);
    candidates.push_back({std::move(poly), contained});
  }

  const double threshold =
      0.4 * static_cast<double>(net.zone_nodes(dest_zone).size());
  std::vector<std::size_t> qualifying;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (static_cast<double>(candidates[i].contained) > threshold) {
      qualifying.push_back(i);
    }
  }
  bool fallback = qualifying.size() < 2;
  if (fallback) {
    // Keep the two best-covering quadrilaterals instead.
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return candidates[a].contained > candidates[b].contained;
                     });
    qualifying.assign(order.begin(), order.begin() + 2);
  }
  std::size_t chosen = qualifying[rng.index(qualifying.size())];
  return {std::move(candidates[chosen].polygon), fallback};
}

std::vector<int> eligible_next_nodes(const Network& net,
                                     std::span<const int> prefix,
                                     const SpecialArea& area) {
  std::vector<int> result;
  int current = prefix.back();
  for (int nb : net.neighbors(current)) {
    if (std::find(prefix.begin(), prefix.end(), nb) != prefix.end()) continue;
    const Node& n = net.nodes()[nb];
    if (point_in_polygon(area.polygon, {n.x, n.y})) result.push_back(nb);
  }
  return result;
}

double route_length_km(const Network& net, const Route& route) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < route.nodes.size(); ++i) {
    total += net.branch_length(route.nodes[i], route.nodes[i + 1]);
  }
  return total;
}

std::pair<double, double> initial_soc_bounds(const Route& route,
                                             const Network& net,
                                             const EvParams& ev,
                                             double station_reach_km) {
  double total_km = route_length_km(net, route);
  double first_km = net.branch_length(route.nodes[0], route.nodes[1]);
  double b = ev.consumption_kwh_per_km * total_km;
  double a = ev.consumption_kwh_per_km * (first_km + station_reach_km);
  a = std::min(a, 0.99 * b);
  return {a, b};
}

double assign_initial_soc(const Route& route, const Network& net,
                          const EvParams& ev, double station_reach_km,
                          Rng& rng) {
  auto [a, b] = initial_soc_bounds(route, net, ev, station_reach_km);
  return rng.uniform(a, b);
}

std::vector<Route> generate_routes(const Network& net, const DemandConfig& cfg,
                                   const EvParams& ev, std::uint64_t seed) {
  if (cfg.min_nodes < 2 || cfg.max_nodes < cfg.min_nodes) {
    throw std::invalid_argument("node-count bounds must satisfy 2 <= min <= max");
  }
  for (const auto* probs : {&cfg.origin_zone_probs, &cfg.dest_zone_probs}) {
    double sum = 0.0;
    for (double p : *probs) {
      if (p < 0.0) throw std::invalid_argument("zone probabilities must be >= 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("zone probabilities must sum to 1");
    }
  }

  Rng rng(seed);
  std::vector<Route> pool;
  pool.reserve(cfg.n_routes);
  std::unordered_set<std::vector<int>, RouteKeyHash> seen;
  seen.reserve(cfg.n_routes * 2);

  int attempts_since_accept = 0;
  while (static_cast<int>(pool.size()) < cfg.n_routes) {
    if (attempts_since_accept > cfg.max_attempts_per_route) {
      throw ExhaustionError(
          "route generation exhausted: " +
          std::to_string(cfg.max_attempts_per_route) +
          " attempts without a new route (" + std::to_string(pool.size()) +
          " of " + std::to_string(cfg.n_routes) + " collected)");
    }
    ++attempts_since_accept;

    Zone origin_zone = sample_zone(cfg.origin_zone_probs, rng);
    Zone dest_zone = sample_zone(cfg.dest_zone_probs, rng);
    const auto& origin_ids = net.zone_nodes(origin_zone);
    if (origin_ids.empty()) continue;
    if (net.zone_nodes(dest_zone).empty()) continue;

    std::vector<int> walk{origin_ids[rng.index(origin_ids.size())]};
    while (true) {
      // Requirements: ends in the destination area, node count in bounds,
      // not a repeat of an already generated route.
      int len = static_cast<int>(walk.size());
      bool at_dest = net.nodes()[walk.back()].zone == dest_zone;
      bool in_bounds = len >= cfg.min_nodes && len <= cfg.max_nodes;
      if (at_dest && in_bounds && !seen.contains(walk)) {
        Route route{walk, origin_zone, dest_zone, 0.0};
        route.initial_soc_kwh =
            assign_initial_soc(route, net, ev, cfg.station_reach_km, rng);
        seen.insert(walk);
        pool.push_back(std::move(route));
        attempts_since_accept = 0;
        if (static_cast<int>(pool.size()) == cfg.n_routes) return pool;
        if (!rng.bernoulli(cfg.continue_prob)) break;
      } else if (len > cfg.max_nodes) {
        break;
      }

      SpecialArea area = special_area(net, walk.back(), dest_zone, rng);
      std::vector<int> eligible = eligible_next_nodes(net, walk, area);
      if (eligible.empty()) break;
      walk.push_back(eligible[rng.index(eligible.size())]);
    }
  }
  return pool;
}

std::vector<long> traffic_flow(const Network& net,
                               std::span<const Route> routes) {
  std::vector<long> counts(net.branch_count(), 0);
  for (std::size_t r = 0; r < routes.size(); ++r) {
    const auto& nodes = routes[r].nodes;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      int b = net.branch_index(nodes[i], nodes[i + 1]);
      if (b < 0) {
        throw Error("route " + std::to_string(r) + " uses missing branch " +
                    std::to_string(nodes[i]) + "-" +
                    std::to_string(nodes[i + 1]));
      }
      ++counts[b];
    }
  }
  return counts;
}

}  // namespace evplan
