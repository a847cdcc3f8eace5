#include "evplan/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "evplan/geometry.hpp"

namespace evplan {
namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

}  // namespace

const char* to_string(Zone zone) {
  switch (zone) {
    case Zone::Residential: return "residential";
    case Zone::Commercial: return "commercial";
    case Zone::Industrial: return "industrial";
    case Zone::Other: return "other";
  }
  return "other";
}

std::optional<Zone> zone_from_string(std::string_view name) {
  for (Zone z : kAllZones) {
    if (name == to_string(z)) return z;
  }
  return std::nullopt;
}

Network::Network(std::vector<Node> nodes, std::vector<Branch> branches)
    : nodes_(std::move(nodes)), branches_(std::move(branches)) {
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].id != i) {
      throw Error("node ids must be dense 0..n-1; node at position " +
                  std::to_string(i) + " has id " + std::to_string(nodes_[i].id));
    }
  }
  for (auto& b : branches_) {
    if (b.u < 0 || b.u >= n || b.v < 0 || b.v >= n) {
      throw Error("branch endpoint out of range: " + std::to_string(b.u) +
                  "-" + std::to_string(b.v));
    }
    if (b.u > b.v) std::swap(b.u, b.v);
  }

  std::vector<int> degree(n, 0);
  for (const auto& b : branches_) {
    ++degree[b.u];
    if (b.v != b.u) ++degree[b.v];
  }
  adj_offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) adj_offsets_[i + 1] = adj_offsets_[i] + degree[i];
  adj_neighbors_.resize(adj_offsets_[n]);
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& b : branches_) {
    adj_neighbors_[cursor[b.u]++] = b.v;
    if (b.v != b.u) adj_neighbors_[cursor[b.v]++] = b.u;
  }
  for (int i = 0; i < n; ++i) {
    std::sort(adj_neighbors_.begin() + adj_offsets_[i],
              adj_neighbors_.begin() + adj_offsets_[i + 1]);
  }

  branch_by_pair_.reserve(branches_.size() * 2);
  for (int i = 0; i < static_cast<int>(branches_.size()); ++i) {
    branch_by_pair_.emplace(pair_key(branches_[i].u, branches_[i].v), i);
  }

  for (const auto& node : nodes_) {
    zone_nodes_[static_cast<int>(node.zone)].push_back(node.id);
  }
}

std::span<const int> Network::neighbors(int node) const {
  return {adj_neighbors_.data() + adj_offsets_[node],
          adj_neighbors_.data() + adj_offsets_[node + 1]};
}

int Network::branch_index(int u, int v) const {
  auto it = branch_by_pair_.find(pair_key(u, v));
  return it == branch_by_pair_.end() ? -1 : it->second;
}

double Network::branch_length(int u, int v) const {
  int i = branch_index(u, v);
  if (i < 0) {
    throw Error("nodes " + std::to_string(u) + " and " + std::to_string(v) +
                " are not adjacent");
  }
  return branches_[i].length_km;
}

const std::vector<int>& Network::zone_nodes(Zone zone) const {
  return zone_nodes_[static_cast<int>(zone)];
}

namespace {

void check_node_bounds(const Network& net, const ValidationLimits& limits,
                       ValidationReport& report) {
  for (const auto& node : net.nodes()) {
    if (node.x < 0.0 || node.x > limits.region_km || node.y < 0.0 ||
        node.y > limits.region_km) {
      report.violations.push_back(
          {ViolationKind::NodeBounds,
           "node " + std::to_string(node.id) + " at (" +
               std::to_string(node.x) + ", " + std::to_string(node.y) +
               ") lies outside the " + std::to_string(limits.region_km) +
               " km region",
           {node.id},
           {}});
    }
  }
}

void check_branches(const Network& net, const ValidationLimits& limits,
                    ValidationReport& report) {
  constexpr double kLengthTolKm = 1e-6;
  std::unordered_map<std::uint64_t, int> seen;
  for (int i = 0; i < net.branch_count(); ++i) {
    const Branch& b = net.branches()[i];
    if (b.u == b.v) {
      report.violations.push_back({ViolationKind::SelfLoop,
                                   "branch " + std::to_string(i) +
                                       " is a self-loop at node " +
                                       std::to_string(b.u),
                                   {b.u},
                                   {i}});
      continue;
    }
    auto [it, inserted] = seen.emplace(pair_key(b.u, b.v), i);
    if (!inserted) {
      report.violations.push_back(
          {ViolationKind::DuplicateBranch,
           "branches " + std::to_string(it->second) + " and " +
               std::to_string(i) + " both connect nodes " +
               std::to_string(b.u) + " and " + std::to_string(b.v),
           {b.u, b.v},
           {it->second, i}});
    }
    if (!(b.length_km > 0.0) || b.length_km >= limits.max_branch_km) {
      report.violations.push_back(
          {ViolationKind::LengthBound,
           "branch " + std::to_string(i) + " (" + std::to_string(b.u) + "-" +
               std::to_string(b.v) + ") has length " +
               std::to_string(b.length_km) + " km outside (0, " +
               std::to_string(limits.max_branch_km) + ")",
           {b.u, b.v},
           {i}});
    }
    const Node& nu = net.nodes()[b.u];
    const Node& nv = net.nodes()[b.v];
    double euclid = std::hypot(nu.x - nv.x, nu.y - nv.y);
    if (std::abs(euclid - b.length_km) > kLengthTolKm) {
      report.violations.push_back(
          {ViolationKind::LengthMismatch,
           "branch " + std::to_string(i) + " (" + std::to_string(b.u) + "-" +
               std::to_string(b.v) + ") stores length " +
               std::to_string(b.length_km) + " km but its endpoints are " +
               std::to_string(euclid) + " km apart",
           {b.u, b.v},
           {i}});
    }
  }
}

void check_connectivity(const Network& net, ValidationReport& report) {
  const int n = net.node_count();
  if (n == 0) return;
  std::vector<char> seen(n, 0);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (int v : net.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push(v);
      }
    }
  }
  if (reached != n) {
    std::vector<int> unreachable;
    for (int i = 0; i < n; ++i) {
      if (!seen[i]) unreachable.push_back(i);
    }
    report.violations.push_back(
        {ViolationKind::Disconnected,
         "network is disconnected: " + std::to_string(unreachable.size()) +
             " of " + std::to_string(n) + " nodes unreachable from node 0",
         unreachable,
         {}});
  }
}

void check_planarity(const Network& net, ValidationReport& report) {
  const auto& nodes = net.nodes();
  const auto& branches = net.branches();
  const int m = net.branch_count();
  for (int i = 0; i < m; ++i) {
    const Branch& a = branches[i];
    if (a.u == a.v) continue;
    Point a1{nodes[a.u].x, nodes[a.u].y};
    Point a2{nodes[a.v].x, nodes[a.v].y};
    for (int j = i + 1; j < m; ++j) {
      const Branch& b = branches[j];
      if (b.u == b.v) continue;
      Point b1{nodes[b.u].x, nodes[b.u].y};
      Point b2{nodes[b.v].x, nodes[b.v].y};
      bool share_u = a.u == b.u || a.u == b.v;
      bool share_v = a.v == b.u || a.v == b.v;
      bool bad;
      if (share_u && share_v) {
        continue;  // duplicate pair, reported separately
      } else if (share_u || share_v) {
        // Sharing one node: only a collinear overlap can add extra
        // intersection points.
        bad = collinear_overlap(a1, a2, b1, b2);
      } else {
        bad = segments_intersect(a1, a2, b1, b2);
      }
      if (bad) {
        report.violations.push_back(
            {ViolationKind::Crossing,
             "branches " + std::to_string(i) + " (" + std::to_string(a.u) +
                 "-" + std::to_string(a.v) + ") and " + std::to_string(j) +
                 " (" + std::to_string(b.u) + "-" + std::to_string(b.v) +
                 ") intersect away from a shared node",
             {a.u, a.v, b.u, b.v},
             {i, j}});
      }
    }
  }
}

}  // namespace

ValidationReport validate_network(const Network& net,
                                  const ValidationLimits& limits) {
  ValidationReport report;
  check_node_bounds(net, limits, report);
  check_branches(net, limits, report);
  check_connectivity(net, report);
  check_planarity(net, report);
  return report;
}

}  // namespace evplan
