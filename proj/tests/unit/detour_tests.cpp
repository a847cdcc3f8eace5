#include <algorithm>
#include <doctest.h>
#include <map>
#include <set>

#include "evplan/demand.hpp"
#include "evplan/detour.hpp"
#include "fixtures.hpp"
#include "oracle_walker.hpp"

using namespace evplan;
using evplan::testing::DetourFixture;
using evplan::testing::detour_fixtures;
using evplan::testing::make_net;
using evplan::testing::make_route;
using evplan::testing::oracle_walk;
using evplan::testing::OracleOutcome;

namespace {

void expect_same(const RouteOutcome& got, const OracleOutcome& want) {
  REQUIRE(got.recorded_ls.size() == want.recorded.size());
  for (std::size_t i = 0; i < want.recorded.size(); ++i) {
    CHECK(std::abs(got.recorded_ls[i] - want.recorded[i]) <= 1e-9);
  }
  CHECK(std::abs(got.l_min_km - want.l_min) <= 1e-9);
  CHECK(got.completed == want.completed);
}

// Oracle equivalence with the implementation's tie decisions replayed into
// the oracle; the oracle still validates that each decision was legal.
void check_fixture_against_oracle(const DetourFixture& f, std::uint64_t seed) {
  DistanceMatrix dm = all_pairs_shortest_paths(f.net);
  RouteOutcome outcome =
      simulate_route(f.net, dm, f.plan, f.route, SimParams{f.ev}, seed);

  std::map<int, int> chosen_by_node;
  for (const DetourEvent& e : outcome.events) {
    if (e.chosen_station >= 0) chosen_by_node[e.node_index] = e.chosen_station;
  }
  auto tie_pick = [&](const std::vector<int>& ties, int node_index) {
    auto it = chosen_by_node.find(node_index);
    REQUIRE(it != chosen_by_node.end());
    REQUIRE(std::find(ties.begin(), ties.end(), it->second) != ties.end());
    return it->second;
  };
  OracleOutcome want =
      oracle_walk(f.net, dm, f.plan.stations, f.route, f.ev, tie_pick);
  expect_same(outcome, want);
}

}  // namespace

TEST_CASE("fixture suite matches frozen hand computations and the oracle") {
  for (const DetourFixture& f : detour_fixtures()) {
    CAPTURE(f.name);
    DistanceMatrix dm = all_pairs_shortest_paths(f.net);
    RouteOutcome out =
        simulate_route(f.net, dm, f.plan, f.route, SimParams{f.ev}, 42);

    REQUIRE(out.recorded_ls.size() == f.expected_recorded.size());
    for (std::size_t i = 0; i < f.expected_recorded.size(); ++i) {
      CHECK(std::abs(out.recorded_ls[i] - f.expected_recorded[i]) <= 1e-9);
    }
    CHECK(std::abs(out.l_min_km - f.expected_l_min) <= 1e-9);
    CHECK(out.completed == f.expected_completed);

    for (std::uint64_t seed : {1, 2, 3}) {
      check_fixture_against_oracle(f, seed);
    }

    // Detours never shorten travel, and the first give-up record bounds
    // the final score from above.
    for (const DetourEvent& e : out.events) CHECK(e.l_detour_km >= -1e-12);
    for (const DetourEvent& e : out.events) {
      if (e.deficit) {
        CHECK(out.l_min_km <= out.recorded_ls.front() + 1e-12);
        break;
      }
    }
  }
}

TEST_CASE("accessible stations: reachability semantics") {
  const DetourFixture tie = detour_fixtures()[4];
  DistanceMatrix dm = all_pairs_shortest_paths(tie.net);

  // Fig. 1 shape: all five nearby stations in, the far one out.
  auto c = accessible_stations(dm, tie.plan, 0, 2.0, tie.ev);
  CHECK(c == std::vector<int>{2, 3, 4, 5, 6});

  // A station at the node itself is reachable at zero SOC.
  auto at_node = accessible_stations(dm, StationPlan::of({0, 7}), 0, 0.0, tie.ev);
  CHECK(at_node == std::vector<int>{0});
  CHECK(accessible_stations(dm, StationPlan::of({7}), 0, 0.0, tie.ev).empty());
}

TEST_CASE("select_station: unique winner and on-path station") {
  Network net = make_net(4, {{0, 1, 3.0},
                             {0, 2, 1.0},
                             {2, 1, 2.5},
                             {0, 3, 1.2},
                             {3, 1, 2.5}});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  Rng rng(1);

  std::vector<int> both{2, 3};
  auto choice = select_station(dm, both, 0, 1, rng);
  CHECK(choice.station == 2);
  CHECK(choice.tie_set == std::vector<int>{2});
  CHECK(choice.l_detour_km == doctest::Approx(0.5));

  std::vector<int> single{3};
  auto only = select_station(dm, single, 0, 1, rng);
  CHECK(only.station == 3);
  CHECK(only.l_detour_km == doctest::Approx(0.7));

  CHECK_THROWS_AS(select_station(dm, std::vector<int>{}, 0, 1, rng), Error);

  // Station on the shortest path: zero extra length.
  Network line = make_net(3, {{0, 1, 2.0}, {1, 2, 2.0}});
  DistanceMatrix dml = all_pairs_shortest_paths(line);
  auto on_path = select_station(dml, std::vector<int>{1}, 0, 2, rng);
  CHECK(on_path.l_detour_km == doctest::Approx(0.0));
}

TEST_CASE("tie scenario: both best stations are chosen across seeds") {
  const DetourFixture f = detour_fixtures()[4];
  REQUIRE(f.name == "tie between two best stations");
  DistanceMatrix dm = all_pairs_shortest_paths(f.net);

  // select_station level: the tie set is exactly {c2, c3} = nodes {3, 4}.
  Rng rng(5);
  auto c = accessible_stations(dm, f.plan, 0, 2.0, f.ev);
  auto choice = select_station(dm, c, 0, 1, rng);
  CHECK(choice.tie_set == std::vector<int>{3, 4});

  std::set<int> seen;
  double fitness_reference = -1.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RouteOutcome out =
        simulate_route(f.net, dm, f.plan, f.route, SimParams{f.ev}, seed);
    REQUIRE(out.events.size() >= 1);
    int chosen = out.events.front().chosen_station;
    CHECK((chosen == 3 || chosen == 4));
    seen.insert(chosen);
    // The tied stations are interchangeable: the score never moves.
    if (fitness_reference < 0) fitness_reference = out.l_min_km;
    CHECK(out.l_min_km == fitness_reference);
  }
  CHECK(seen == std::set<int>{3, 4});
}

TEST_CASE("tie-break is deterministic for a fixed seed") {
  const DetourFixture f = detour_fixtures()[4];
  DistanceMatrix dm = all_pairs_shortest_paths(f.net);
  for (std::uint64_t seed : {7, 8, 9}) {
    auto a = simulate_route(f.net, dm, f.plan, f.route, SimParams{f.ev}, seed);
    auto b = simulate_route(f.net, dm, f.plan, f.route, SimParams{f.ev}, seed);
    CHECK(a.recorded_ls == b.recorded_ls);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
      CHECK(a.events[i].chosen_station == b.events[i].chosen_station);
      CHECK(a.events[i].accessible == b.events[i].accessible);
    }
  }
}

TEST_CASE("infeasible onward leg is flagged and treated as no station") {
  const auto fixtures = detour_fixtures();
  const DetourFixture& f = fixtures[6];
  REQUIRE(f.name == "reachable station with infeasible onward leg");
  DistanceMatrix dm = all_pairs_shortest_paths(f.net);
  RouteOutcome out =
      simulate_route(f.net, dm, f.plan, f.route, SimParams{f.ev}, 1);
  REQUIRE(!out.events.empty());
  const DetourEvent& e = out.events.back();
  CHECK(e.deficit);
  CHECK(e.infeasible_leg);
  CHECK(e.chosen_station == -1);
  CHECK(e.accessible == std::vector<int>{2});  // reachable, but rejected
  CHECK_FALSE(out.completed);
}

TEST_CASE("evaluate_plan sums the per-route minima") {
  // The three worked examples share one network and the plan {station E}.
  const auto fixtures = detour_fixtures();
  const Network& net = fixtures[1].net;
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  StationPlan plan = StationPlan::of({4});
  std::vector<Route> routes{
      make_route({0, 1, 2, 3}, 2.8),  // detours, l_min 2
      make_route({0, 1, 2, 3}, 2.2),  // cannot reach E, l_min 4
      make_route({0, 1, 2, 3}, 3.2),  // completes unaided, l_min 0
  };
  SimParams sim{};
  CHECK(evaluate_plan(net, dm, plan, routes, sim, 1) == doctest::Approx(6.0));
  CHECK(evaluate_plan(net, dm, plan, {}, sim, 1) == 0.0);
}

TEST_CASE("evaluate_plan reports the offending route index") {
  Network net = make_net(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  std::vector<Route> routes{make_route({0, 1}, 0.1),
                            make_route({0, 2}, 0.1)};  // not adjacent
  CHECK_THROWS_WITH_AS(
      evaluate_plan(net, dm, StationPlan{}, routes, SimParams{}, 1),
      doctest::Contains("route 1"), Error);
}

TEST_CASE("a full plan completes every route whose branches fit the range") {
  Network net = make_net(5, {{0, 1, 4.0},
                             {1, 2, 4.0},
                             {2, 3, 4.0},
                             {2, 4, 3.0},
                             {3, 4, 3.0}});
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  StationPlan everywhere = StationPlan::of({0, 1, 2, 3, 4});
  for (double soc : {1.0, 1.5, 2.5, 3.0}) {
    RouteOutcome out = simulate_route(net, dm, everywhere,
                                      make_route({0, 1, 2, 3}, soc),
                                      SimParams{}, 3);
    CHECK(out.completed);
  }
}

TEST_CASE("PlanEvaluator agrees with evaluate_plan and is thread-stable") {
  Network net = generate_network(
      {24, 45, 12.0, 7.0, {6, 6, 6, 6}, 2.8, 40}, 21);
  DistanceMatrix dm = all_pairs_shortest_paths(net);
  DemandConfig dcfg;
  dcfg.n_routes = 120;
  dcfg.max_nodes = 10;
  std::vector<Route> routes = generate_routes(net, dcfg, EvParams{}, 5);

  SimParams sim{};
  StationPlan plan = StationPlan::of({0, 5, 11, 17, 23});
  double direct = evaluate_plan(net, dm, plan, routes, sim, 77);

  PlanEvaluator eval1(net, dm, routes, sim, 77, 1);
  PlanEvaluator eval4(net, dm, routes, sim, 77, 4);
  CHECK(eval1.fitness(plan) == direct);
  CHECK(eval4.fitness(plan) == direct);

  std::vector<StationPlan> plans;
  for (int i = 0; i < 12; ++i) {
    plans.push_back(StationPlan::of({i, i + 3, i + 7}));
  }
  auto seq = eval1.fitness_many(plans);
  auto par = eval4.fitness_many(plans);
  CHECK(seq == par);
  for (std::size_t i = 0; i < plans.size(); ++i) {
    CHECK(seq[i] == eval1.fitness(plans[i]));
  }
}

TEST_CASE("oracle equivalence on randomized small worlds") {
  Rng meta(4242);
  for (int world = 0; world < 6; ++world) {
    Network net = generate_network(
        {16, 28, 10.0, 7.0, {4, 4, 4, 4}, 2.4, 40},
        1000 + world);
    DistanceMatrix dm = all_pairs_shortest_paths(net);
    DemandConfig dcfg;
    dcfg.n_routes = 30;
    dcfg.max_nodes = 8;
    std::vector<Route> routes =
        generate_routes(net, dcfg, EvParams{}, 50 + world);

    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> ids;
      for (int i = 0; i < net.node_count(); ++i) ids.push_back(i);
      meta.shuffle(ids);
      ids.resize(4);
      StationPlan plan = StationPlan::of(ids);

      for (std::size_t r = 0; r < routes.size(); ++r) {
        std::uint64_t seed = derive_seed(99, {static_cast<std::uint64_t>(r)});
        RouteOutcome out =
            simulate_route(net, dm, plan, routes[r], SimParams{}, seed);

        std::map<int, int> chosen;
        for (const DetourEvent& e : out.events) {
          if (e.chosen_station >= 0) chosen[e.node_index] = e.chosen_station;
        }
        auto tie_pick = [&](const std::vector<int>& ties, int node) {
          auto it = chosen.find(node);
          REQUIRE(it != chosen.end());
          REQUIRE(std::find(ties.begin(), ties.end(), it->second) != ties.end());
          return it->second;
        };
        OracleOutcome want =
            oracle_walk(net, dm, plan.stations, routes[r], EvParams{}, tie_pick);
        expect_same(out, want);
      }
    }
  }
}
