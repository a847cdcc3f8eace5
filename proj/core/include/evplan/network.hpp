#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace evplan {

// Base type for all recoverable toolkit failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the network generator cannot satisfy its constraints.
struct GenerationError : Error {
  using Error::Error;
};

enum class Zone { Residential = 0, Commercial = 1, Industrial = 2, Other = 3 };

inline constexpr int kZoneCount = 4;
inline constexpr std::array<Zone, kZoneCount> kAllZones{
    Zone::Residential, Zone::Commercial, Zone::Industrial, Zone::Other};

const char* to_string(Zone zone);
std::optional<Zone> zone_from_string(std::string_view name);

// One intersection. Coordinates are km within the modeled region.
struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  Zone zone = Zone::Other;
};

// One undirected road between two intersections. Stored with u < v.
struct Branch {
  int u = 0;
  int v = 0;
  double length_km = 0.0;
};

// Immutable road network: nodes, branches, and a per-node adjacency index.
// The constructor only enforces what the adjacency index needs (dense node
// ids, branch endpoints in range); everything else is reported by
// validate_network so that defective data can be diagnosed, not just thrown.
class Network {
 public:
  Network() = default;
  Network(std::vector<Node> nodes, std::vector<Branch> branches);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int branch_count() const { return static_cast<int>(branches_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Branch>& branches() const { return branches_; }

  // Neighbor node ids of `node`, ascending.
  std::span<const int> neighbors(int node) const;

  // Index into branches() for the unordered pair {u, v}, or -1.
  int branch_index(int u, int v) const;

  // Length of the branch {u, v}; throws Error when the nodes are not
  // adjacent.
  double branch_length(int u, int v) const;

  // Node ids of a zone, ascending.
  const std::vector<int>& zone_nodes(Zone zone) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Branch> branches_;
  std::vector<int> adj_offsets_;
  std::vector<int> adj_neighbors_;
  std::unordered_map<std::uint64_t, int> branch_by_pair_;
  std::array<std::vector<int>, kZoneCount> zone_nodes_;
};

struct NetworkConfig {
  int n_nodes = 100;
  int n_branches = 203;
  double region_km = 30.0;
  double max_branch_km = 7.0;
  // Node count per zone in kAllZones order; must sum to n_nodes.
  std::array<int, kZoneCount> zone_counts{25, 25, 25, 25};
  // Radius of the jitter disk around each zone's cluster center.
  double cluster_spread_km = 6.5;
  int max_attempts = 40;
};

// Synthesizes a connected planar network: one point cluster per zone at the
// region's quadrant centers, Delaunay edges between the points, edges at or
// above max_branch_km dropped, then random non-bridge edges removed until
// exactly n_branches remain. Deterministic per seed. Throws GenerationError
// when no attempt satisfies the constraints.
Network generate_network(const NetworkConfig& config, std::uint64_t seed);

enum class ViolationKind {
  NodeBounds,      // node coordinates outside [0, region]
  SelfLoop,        // branch with u == v
  DuplicateBranch, // unordered pair appears twice
  LengthBound,     // branch length outside (0, max_branch_km)
  LengthMismatch,  // stored length differs from endpoint distance
  Disconnected,    // more than one component
  Crossing,        // two branches intersect away from a shared node
};

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<int> nodes;     // offending node ids, if any
  std::vector<int> branches;  // offending branch indices, if any
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct ValidationLimits {
  double region_km = 30.0;
  double max_branch_km = 7.0;
};

// Checks connectivity, planar embedding (pairwise segment intersection with
// a shared-endpoint exemption; collinear overlap is a violation), length
// bounds, length/coordinate consistency, and duplicate branches.
ValidationReport validate_network(const Network& net,
                                  const ValidationLimits& limits = {});

// Exact all-pairs shortest path lengths plus next-hop tables for path
// reconstruction. Immutable and safe to share across threads.
class DistanceMatrix {
 public:
  int size() const { return n_; }

  double at(int i, int j) const { return dist_[idx(i, j)]; }

  // Row pointer for hot loops: row(i)[j] == at(i, j).
  const double* row(int i) const { return dist_.data() + idx(i, 0); }

  // Node sequence from `from` to `to` (inclusive); consecutive entries are
  // adjacent in the source network.
  std::vector<int> path(int from, int to) const;

  friend DistanceMatrix all_pairs_shortest_paths(const Network& net);

 private:
  explicit DistanceMatrix(int n);
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> dist_;
  std::vector<int> next_;
};

// Floyd-Warshall over branch lengths. Throws Error when net is disconnected.
DistanceMatrix all_pairs_shortest_paths(const Network& net);

// Reconstructed shortest path and its length. Throws std::out_of_range on
// invalid ids.
std::pair<std::vector<int>, double> path_between(const DistanceMatrix& dm,
                                                 int from, int to);

}  // namespace evplan
