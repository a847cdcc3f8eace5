#include <algorithm>
#include <doctest.h>

#include "evplan/io.hpp"
#include "evplan/network.hpp"
#include "evplan/rng.hpp"
#include "fixtures.hpp"

using namespace evplan;
using evplan::testing::make_net;

namespace {

const Network& default_net() {
  static Network net = generate_network({}, 1);
  return net;
}

bool has_kind(const ValidationReport& r, ViolationKind kind) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

// Square with both diagonals: the diagonals cross away from any node.
Network square_with_diagonals() {
  std::vector<Node> nodes{{0, 0, 0, Zone::Other},
                          {1, 1, 0, Zone::Other},
                          {2, 1, 1, Zone::Other},
                          {3, 0, 1, Zone::Other}};
  double s = 1.0, d = std::sqrt(2.0);
  std::vector<Branch> branches{{0, 1, s}, {1, 2, s}, {2, 3, s},
                               {0, 3, s}, {0, 2, d}, {1, 3, d}};
  return Network(std::move(nodes), std::move(branches));
}

}  // namespace

TEST_CASE("constructor rejects non-dense node ids") {
  std::vector<Node> nodes{{0, 0, 0, Zone::Other}, {2, 1, 0, Zone::Other}};
  CHECK_THROWS_AS(Network(std::move(nodes), {}), Error);
  CHECK_THROWS_AS(Network({{0, 0, 0, Zone::Other}}, {{0, 1, 1.0}}), Error);
}

TEST_CASE("adjacency and branch lookup") {
  Network net = make_net(4, {{0, 1, 1.0}, {2, 1, 2.0}, {1, 3, 3.0}});
  auto nb = net.neighbors(1);
  CHECK(std::vector<int>(nb.begin(), nb.end()) == std::vector<int>{0, 2, 3});
  CHECK(net.branch_length(1, 2) == 2.0);
  CHECK(net.branch_length(2, 1) == 2.0);
  CHECK(net.branch_index(0, 3) == -1);
  CHECK_THROWS_AS(net.branch_length(0, 3), Error);
  CHECK(net.neighbors(3).size() == 1);
}

TEST_CASE("crossing diagonals are a planarity violation naming both branches") {
  auto report = validate_network(square_with_diagonals());
  REQUIRE(has_kind(report, ViolationKind::Crossing));
  const auto it =
      std::find_if(report.violations.begin(), report.violations.end(),
                   [](const Violation& v) { return v.kind == ViolationKind::Crossing; });
  CHECK(it->branches == std::vector<int>{4, 5});
}

TEST_CASE("collinear overlap through a shared endpoint is a violation") {
  std::vector<Node> nodes{{0, 0, 0, Zone::Other},
                          {1, 2, 0, Zone::Other},
                          {2, 1, 0, Zone::Other}};
  std::vector<Branch> branches{{0, 1, 2.0}, {0, 2, 1.0}};
  auto report = validate_network(Network(std::move(nodes), std::move(branches)));
  CHECK(has_kind(report, ViolationKind::Crossing));
}

TEST_CASE("two disjoint edges are a connectivity violation") {
  std::vector<Node> nodes{{0, 0, 0, Zone::Other},
                          {1, 1, 0, Zone::Other},
                          {2, 0, 1, Zone::Other},
                          {3, 1, 1, Zone::Other}};
  std::vector<Branch> branches{{0, 1, 1.0}, {2, 3, 1.0}};
  auto report = validate_network(Network(std::move(nodes), std::move(branches)));
  CHECK(has_kind(report, ViolationKind::Disconnected));
}

TEST_CASE("duplicate branches, self loops, and bad lengths are flagged") {
  std::vector<Node> nodes{{0, 0, 0, Zone::Other}, {1, 3, 0, Zone::Other}};
  std::vector<Branch> branches{{0, 1, 3.0}, {1, 0, 3.0}, {0, 0, 1.0}};
  auto report = validate_network(Network(std::move(nodes), std::move(branches)));
  CHECK(has_kind(report, ViolationKind::DuplicateBranch));
  CHECK(has_kind(report, ViolationKind::SelfLoop));

  auto r2 = validate_network(make_net(2, {{0, 1, 9.0}}));
  CHECK(has_kind(r2, ViolationKind::LengthBound));    // >= 7 km
  CHECK(has_kind(r2, ViolationKind::LengthMismatch)); // nodes are 1 km apart

  std::vector<Node> out_nodes{{0, -1, 0, Zone::Other}, {1, 2, 0, Zone::Other}};
  auto r3 = validate_network(Network(std::move(out_nodes), {{0, 1, 3.0}}));
  CHECK(has_kind(r3, ViolationKind::NodeBounds));
}

TEST_CASE("default generated network matches the case-study shape") {
  const Network& net = default_net();
  CHECK(net.node_count() == 100);
  CHECK(net.branch_count() == 203);
  for (Zone z : kAllZones) CHECK(net.zone_nodes(z).size() == 25);
  for (const Branch& b : net.branches()) {
    CHECK(b.length_km > 0.0);
    CHECK(b.length_km < 7.0);
  }
  CHECK(validate_network(net).ok());
}

TEST_CASE("minimum branch count forces a connected tree") {
  NetworkConfig cfg;
  cfg.n_nodes = 4;
  cfg.n_branches = 3;
  cfg.region_km = 8.0;
  cfg.zone_counts = {1, 1, 1, 1};
  cfg.cluster_spread_km = 1.6;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    Network net = generate_network(cfg, seed);
    CHECK(net.node_count() == 4);
    CHECK(net.branch_count() == 3);
    CHECK(validate_network(net, {cfg.region_km, cfg.max_branch_km}).ok());
  }
}

TEST_CASE("small network generation passes validation with zero violations") {
  NetworkConfig cfg;
  cfg.n_nodes = 10;
  cfg.n_branches = 17;
  cfg.region_km = 9.0;
  cfg.zone_counts = {3, 3, 2, 2};
  cfg.cluster_spread_km = 2.4;
  Network net = generate_network(cfg, 7);
  CHECK(net.branch_count() == 17);
  CHECK(validate_network(net, {cfg.region_km, cfg.max_branch_km})
            .violations.empty());
}

TEST_CASE("generation is deterministic per seed") {
  NetworkConfig cfg;
  cfg.n_nodes = 20;
  cfg.n_branches = 36;
  cfg.region_km = 12.0;
  cfg.zone_counts = {5, 5, 5, 5};
  cfg.cluster_spread_km = 2.6;
  std::string a = network_to_json(generate_network(cfg, 11));
  std::string b = network_to_json(generate_network(cfg, 11));
  std::string c = network_to_json(generate_network(cfg, 12));
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("generator reports attempts when constraints cannot be met") {
  NetworkConfig cfg;
  cfg.n_nodes = 4;
  cfg.n_branches = 6;  // a 4-node planar graph under the cap can rarely do 6
  cfg.region_km = 30.0;
  cfg.zone_counts = {1, 1, 1, 1};
  cfg.cluster_spread_km = 0.5;  // clusters 15 km apart, cap 7: no edges
  cfg.max_attempts = 3;
  CHECK_THROWS_WITH_AS(generate_network(cfg, 1),
                       doctest::Contains("3"), GenerationError);
}

TEST_CASE("single-node distance matrix") {
  Network net(std::vector<Node>{{0, 1, 1, Zone::Other}}, {});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  CHECK(dm.size() == 1);
  CHECK(dm.at(0, 0) == 0.0);
  auto [p, len] = path_between(dm, 0, 0);
  CHECK(p == std::vector<int>{0});
  CHECK(len == 0.0);
}

TEST_CASE("two-node distance matrix") {
  Network net = make_net(2, {{0, 1, 3.0}});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  CHECK(dm.at(0, 1) == 3.0);
  CHECK(dm.at(1, 0) == 3.0);
  CHECK(dm.at(0, 0) == 0.0);
  auto [p, len] = path_between(dm, 0, 1);
  CHECK(p == std::vector<int>{0, 1});
  CHECK(len == 3.0);
}

TEST_CASE("triangle shortcut matches the hand-computed oracle") {
  // (a,b)=1, (b,c)=2, (a,c)=4: going around is shorter than the direct road.
  Network net = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 4.0}});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  CHECK(dm.at(0, 2) == doctest::Approx(3.0).epsilon(1e-12));
  auto [p, len] = path_between(dm, 0, 2);
  CHECK(p == std::vector<int>{0, 1, 2});
  CHECK(len == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("APSP rejects disconnected networks") {
  Network net = make_net(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(all_pairs_shortest_paths(net), Error);
}

TEST_CASE("path_between rejects invalid ids") {
  Network net = make_net(2, {{0, 1, 3.0}});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  CHECK_THROWS_AS(path_between(dm, 0, 5), std::out_of_range);
  CHECK_THROWS_AS(path_between(dm, -1, 0), std::out_of_range);
}

TEST_CASE("distance matrix properties on the generated network") {
  const Network& net = default_net();
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  const int n = net.node_count();

  for (int i = 0; i < n; ++i) {
    CHECK(dm.at(i, i) == 0.0);
    for (int j = i + 1; j < n; ++j) {
      CHECK(dm.at(i, j) == dm.at(j, i));
      CHECK(dm.at(i, j) > 0.0);
    }
  }
  // Adjacent pairs never beat their branch.
  for (const Branch& b : net.branches()) {
    CHECK(dm.at(b.u, b.v) <= b.length_km + 1e-12);
  }

  Rng rng(2024);
  for (int t = 0; t < 10000; ++t) {
    int i = static_cast<int>(rng.index(n));
    int j = static_cast<int>(rng.index(n));
    int k = static_cast<int>(rng.index(n));
    CHECK(dm.at(i, j) <= dm.at(i, k) + dm.at(k, j) + 1e-9);
  }

  for (int t = 0; t < 1000; ++t) {
    int i = static_cast<int>(rng.index(n));
    int j = static_cast<int>(rng.index(n));
    auto [nodes, len] = path_between(dm, i, j);
    REQUIRE(!nodes.empty());
    CHECK(nodes.front() == i);
    CHECK(nodes.back() == j);
    double sum = 0.0;
    for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
      sum += net.branch_length(nodes[s], nodes[s + 1]);
    }
    CHECK(std::abs(sum - len) <= 1e-9);
    CHECK(std::abs(sum - dm.at(i, j)) <= 1e-9);
  }
}
