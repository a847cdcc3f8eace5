#pragma once

#include <functional>
#include <vector>

#include "evplan/demand.hpp"
#include "evplan/detour.hpp"
#include "evplan/network.hpp"

namespace evplan::testing {

struct OracleOutcome {
  std::vector<double> recorded;
  double l_min = 0.0;
  bool completed = false;
  // Station chosen at each detour, in walk order.
  std::vector<int> stations_used;
};

// Resolves a tie among the given sorted candidate set at a route node index.
using TiePick = std::function<int(const std::vector<int>&, int node_index)>;

// Brute-force reference for the detour walk. For every candidate give-up
// prefix it replays the trip from scratch using only Network::branch_length
// and DistanceMatrix::at, re-deriving SOC, candidate sets, and detour sums
// independently of the production walk. Quadratic and allocation-happy on
// purpose.
OracleOutcome oracle_walk(const Network& net, const DistanceMatrix& dm,
                          const std::vector<int>& stations, const Route& route,
                          const EvParams& ev, const TiePick& tie_pick);

}  // namespace evplan::testing
