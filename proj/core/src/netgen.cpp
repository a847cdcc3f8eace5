#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>

#include <boost/polygon/voronoi.hpp>

#include "evplan/network.hpp"
#include "evplan/rng.hpp"

namespace evplan {
namespace {

// Coordinates live on a 1e-6 km grid so that the integer triangulation and
// the stored doubles describe exactly the same planar embedding.
constexpr double kGridScale = 1e6;

double snap(double v) { return std::round(v * kGridScale) / kGridScale; }

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

struct EdgeCandidate {
  int u;
  int v;
  double length_km;
};

std::vector<Node> place_nodes(const NetworkConfig& cfg, Rng& rng) {
  const double r = cfg.region_km;
  const std::array<std::pair<double, double>, kZoneCount> centers{{
      {r * 0.25, r * 0.25},
      {r * 0.75, r * 0.25},
      {r * 0.25, r * 0.75},
      {r * 0.75, r * 0.75},
  }};
  std::vector<Node> nodes;
  nodes.reserve(cfg.n_nodes);
  for (int z = 0; z < kZoneCount; ++z) {
    auto [cx, cy] = centers[z];
    for (int i = 0; i < cfg.zone_counts[z]; ++i) {
      double x = cx;
      double y = cy;
      for (int tries = 0; tries < 64; ++tries) {
        double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        double radius = cfg.cluster_spread_km * std::sqrt(rng.uniform());
        double px = cx + radius * std::cos(angle);
        double py = cy + radius * std::sin(angle);
        if (px >= 0.0 && px <= r && py >= 0.0 && py <= r) {
          x = px;
          y = py;
          break;
        }
      }
      nodes.push_back({static_cast<int>(nodes.size()), snap(std::clamp(x, 0.0, r)),
                       snap(std::clamp(y, 0.0, r)),
                       static_cast<Zone>(z)});
    }
  }
  return nodes;
}

std::vector<EdgeCandidate> delaunay_edges(const std::vector<Node>& nodes,
                                          double max_branch_km) {
  std::vector<boost::polygon::point_data<int>> pts;
  pts.reserve(nodes.size());
  for (const Node& n : nodes) {
    pts.emplace_back(static_cast<int>(std::llround(n.x * kGridScale)),
                     static_cast<int>(std::llround(n.y * kGridScale)));
  }
  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::construct_voronoi(pts.begin(), pts.end(), &vd);

  std::set<std::pair<int, int>> seen;
  std::vector<EdgeCandidate> edges;
  for (const auto& edge : vd.edges()) {
    if (!edge.is_primary()) continue;
    int i = static_cast<int>(edge.cell()->source_index());
    int j = static_cast<int>(edge.twin()->cell()->source_index());
    if (i >= j) continue;
    if (!seen.emplace(i, j).second) continue;
    double len = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
    if (len > 0.0 && len < max_branch_km) {
      edges.push_back({i, j, len});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return edges;
}

bool connected_subset(int n_nodes, const std::vector<EdgeCandidate>& edges,
                      const std::vector<char>& alive, int skip) {
  DisjointSet dsu(n_nodes);
  int components = n_nodes;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (!alive[i] || i == skip) continue;
    if (dsu.unite(edges[i].u, edges[i].v)) --components;
  }
  return components == 1;
}

std::optional<Network> try_generate(const NetworkConfig& cfg, Rng& rng) {
  std::vector<Node> nodes = place_nodes(cfg, rng);

  std::set<std::pair<long long, long long>> grid;
  for (const Node& n : nodes) {
    if (!grid.emplace(std::llround(n.x * kGridScale),
                      std::llround(n.y * kGridScale))
             .second) {
      return std::nullopt;  // coincident points, re-jitter
    }
  }

  std::vector<EdgeCandidate> edges = delaunay_edges(nodes, cfg.max_branch_km);
  if (static_cast<int>(edges.size()) < cfg.n_branches) return std::nullopt;

  std::vector<char> alive(edges.size(), 1);
  if (!connected_subset(cfg.n_nodes, edges, alive, -1)) return std::nullopt;

  // Thin out random edges; an edge whose removal would disconnect the graph
  // stays a bridge forever, so it can be excluded permanently.
  std::vector<int> removable(edges.size());
  std::iota(removable.begin(), removable.end(), 0);
  int alive_count = static_cast<int>(edges.size());
  while (alive_count > cfg.n_branches) {
    if (removable.empty()) return std::nullopt;
    std::size_t pick = rng.index(removable.size());
    int e = removable[pick];
    removable[pick] = removable.back();
    removable.pop_back();
    if (connected_subset(cfg.n_nodes, edges, alive, e)) {
      alive[e] = 0;
      --alive_count;
    }
  }

  std::vector<Branch> branches;
  branches.reserve(cfg.n_branches);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (alive[i]) branches.push_back({edges[i].u, edges[i].v, edges[i].length_km});
  }

  Network net(std::move(nodes), std::move(branches));
  if (!validate_network(net, {cfg.region_km, cfg.max_branch_km}).ok()) {
    return std::nullopt;
  }
  return net;
}

}  // namespace

Network generate_network(const NetworkConfig& cfg, std::uint64_t seed) {
  if (cfg.n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
  if (cfg.n_branches < cfg.n_nodes - 1) {
    throw std::invalid_argument("n_branches must be >= n_nodes - 1");
  }
  if (std::accumulate(cfg.zone_counts.begin(), cfg.zone_counts.end(), 0) !=
      cfg.n_nodes) {
    throw std::invalid_argument("zone_counts must sum to n_nodes");
  }
  if (cfg.region_km <= 0.0 || cfg.max_branch_km <= 0.0 ||
      cfg.cluster_spread_km <= 0.0) {
    throw std::invalid_argument("region, branch cap, and spread must be > 0");
  }

  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    if (auto net = try_generate(cfg, rng)) return std::move(*net);
  }
  throw GenerationError(
      "network generation failed: no attempt out of " +
      std::to_string(cfg.max_attempts) +
      " satisfied the branch-count/connectivity constraints (region " +
      std::to_string(cfg.region_km) + " km, " +
      std::to_string(cfg.n_nodes) + " nodes, " +
      std::to_string(cfg.n_branches) + " branches)");
}

}  // namespace evplan
