#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "evplan/demand.hpp"
#include "evplan/detour.hpp"
#include "evplan/network.hpp"

namespace evplan::testing {

// Network from explicit branch lengths; coordinates default to a dummy line
// layout, so these nets are for simulation tests, not geometric validation.
inline Network make_net(int n,
                        const std::vector<std::tuple<int, int, double>>& edges,
                        std::vector<Point> coords = {}) {
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) {
    Point p = coords.empty() ? Point{static_cast<double>(i), 0.0}
                             : coords[static_cast<std::size_t>(i)];
    nodes.push_back({i, p.x, p.y, Zone::Other});
  }
  std::vector<Branch> branches;
  for (auto [u, v, len] : edges) branches.push_back({u, v, len});
  return Network(std::move(nodes), std::move(branches));
}

inline Route make_route(std::vector<int> nodes, double soc_kwh) {
  return Route{std::move(nodes), Zone::Other, Zone::Other, soc_kwh};
}

// One hand-built detour scenario with its hand-computed expectations.
struct DetourFixture {
  std::string name;
  Network net;
  Route route;
  StationPlan plan;
  EvParams ev;
  std::vector<double> expected_recorded;
  double expected_l_min;
  bool expected_completed;
};

// Scenario suite used by the unit tests and the acceptance gate. All
// expectations were computed by hand from the distance matrices.
inline std::vector<DetourFixture> detour_fixtures() {
  std::vector<DetourFixture> fs;
  const EvParams default_ev{};          // 50 kWh, 0.25 kWh/km
  const EvParams unit_ev{50.0, 1.0};    // 1 kWh/km for round numbers

  // Line A-B-C-D, 4 km branches, plus station E near C and D.
  auto line_e = [] {
    return make_net(5, {{0, 1, 4.0},
                        {1, 2, 4.0},
                        {2, 3, 4.0},
                        {2, 4, 3.0},
                        {3, 4, 3.0}});
  };

  fs.push_back({"no deficit anywhere",
                line_e(),
                make_route({0, 1, 2, 3}, 3.2),
                StationPlan{},
                default_ev,
                {0.0},
                0.0,
                true});

  fs.push_back({"single detour completes",
                line_e(),
                make_route({0, 1, 2, 3}, 2.8),
                StationPlan::of({4}),
                default_ev,
                {4.0, 2.0},
                2.0,
                true});

  fs.push_back({"deficit with no stations",
                line_e(),
                make_route({0, 1, 2, 3}, 2.2),
                StationPlan{},
                default_ev,
                {4.0},
                4.0,
                false});

  fs.push_back({"station at the deficit node",
                make_net(3, {{0, 1, 4.0}, {1, 2, 4.0}}),
                make_route({0, 1, 2}, 1.0),
                StationPlan::of({1}),
                default_ev,
                {4.0, 0.0},
                0.0,
                true});

  // Tie scenario: five reachable stations, three tied on the detour sum,
  // two of those tied on the onward leg; d1 (node 7) out of reach.
  fs.push_back({"tie between two best stations",
                make_net(8, {{0, 1, 2.5},
                             {0, 2, 1.0},
                             {2, 1, 2.0},
                             {0, 3, 1.25},
                             {3, 1, 1.75},
                             {0, 4, 1.25},
                             {4, 1, 1.75},
                             {0, 5, 1.0},
                             {5, 1, 2.5},
                             {0, 6, 1.5},
                             {6, 1, 2.0},
                             {0, 7, 5.0},
                             {7, 1, 0.5}}),
                make_route({0, 1}, 2.0),
                StationPlan::of({2, 3, 4, 5, 6, 7}),
                unit_ev,
                {2.5, 0.5},
                0.5,
                true});

  fs.push_back({"unique best station",
                make_net(4, {{0, 1, 3.0},
                             {0, 2, 1.0},
                             {2, 1, 2.5},
                             {0, 3, 1.2},
                             {3, 1, 2.5}}),
                make_route({0, 1}, 1.2),
                StationPlan::of({2, 3}),
                unit_ev,
                {3.0, 0.5},
                0.5,
                true});

  fs.push_back({"reachable station with infeasible onward leg",
                make_net(3, {{0, 1, 4.9}, {0, 2, 1.0}, {2, 1, 6.5}}),
                make_route({0, 1}, 2.0),
                StationPlan::of({2}),
                EvParams{5.0, 1.0},
                {4.9},
                4.9,
                false});

  fs.push_back({"two zero-cost detours at route nodes",
                make_net(5, {{0, 1, 0.5},
                             {1, 2, 1.5},
                             {2, 3, 1.5},
                             {3, 4, 1.5}}),
                make_route({0, 1, 2, 3, 4}, 0.6),
                StationPlan::of({1, 3}),
                EvParams{3.0, 1.0},
                {4.5, 1.5, 0.0},
                0.0,
                true});

  fs.push_back({"two paid detours",
                make_net(6, {{0, 1, 1.0},
                             {1, 2, 2.0},
                             {2, 3, 2.5},
                             {1, 4, 0.5},
                             {4, 2, 2.0},
                             {2, 5, 0.5},
                             {5, 3, 2.2}}),
                make_route({0, 1, 2, 3}, 1.6),
                StationPlan::of({4, 5}),
                EvParams{4.0, 1.0},
                {4.5, 3.0, 0.7},
                0.7,
                true});

  fs.push_back({"give-up after a successful detour",
                make_net(6, {{0, 1, 1.5},
                             {1, 2, 1.5},
                             {2, 3, 1.5},
                             {3, 4, 1.5},
                             {1, 5, 1.0},
                             {5, 2, 1.0}}),
                make_route({0, 1, 2, 3, 4}, 2.6),
                StationPlan::of({5}),
                EvParams{3.0, 1.0},
                {4.5, 2.0},
                2.0,
                false});

  fs.push_back({"deficit on the very first branch",
                make_net(2, {{0, 1, 5.0}}),
                make_route({0, 1}, 1.0),
                StationPlan{},
                default_ev,
                {5.0},
                5.0,
                false});

  fs.push_back({"stations everywhere",
                make_net(4, {{0, 1, 2.0},
                             {1, 2, 2.0},
                             {2, 3, 2.0},
                             {0, 2, 3.5}}),
                make_route({0, 1, 2, 3}, 2.2),
                StationPlan::of({0, 1, 2, 3}),
                EvParams{2.5, 1.0},
                {4.0, 2.0, 0.0},
                0.0,
                true});

  return fs;
}

}  // namespace evplan::testing
