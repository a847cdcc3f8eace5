#include <cmath>
#include <limits>
#include <string>

#include "evplan/network.hpp"

namespace evplan {

DistanceMatrix::DistanceMatrix(int n)
    : n_(n),
      dist_(static_cast<std::size_t>(n) * n,
            std::numeric_limits<double>::infinity()),
      next_(static_cast<std::size_t>(n) * n, -1) {}

std::vector<int> DistanceMatrix::path(int from, int to) const {
  if (from < 0 || from >= n_ || to < 0 || to >= n_) {
    throw std::out_of_range("node id out of range: " + std::to_string(from) +
                            " -> " + std::to_string(to));
  }
  std::vector<int> nodes{from};
  int cur = from;
  while (cur != to) {
    cur = next_[idx(cur, to)];
    nodes.push_back(cur);
  }
  return nodes;
}

DistanceMatrix all_pairs_shortest_paths(const Network& net) {
  const int n = net.node_count();
  DistanceMatrix dm(n);
  for (int i = 0; i < n; ++i) {
    dm.dist_[dm.idx(i, i)] = 0.0;
    dm.next_[dm.idx(i, i)] = i;
  }
  for (const Branch& b : net.branches()) {
    if (b.u == b.v) continue;
    // Keep the shortest branch if the pair is duplicated.
    if (b.length_km < dm.dist_[dm.idx(b.u, b.v)]) {
      dm.dist_[dm.idx(b.u, b.v)] = b.length_km;
      dm.dist_[dm.idx(b.v, b.u)] = b.length_km;
      dm.next_[dm.idx(b.u, b.v)] = b.v;
      dm.next_[dm.idx(b.v, b.u)] = b.u;
    }
  }
  for (int k = 0; k < n; ++k) {
    const double* row_k = dm.dist_.data() + dm.idx(k, 0);
    for (int i = 0; i < n; ++i) {
      double d_ik = dm.dist_[dm.idx(i, k)];
      if (!std::isfinite(d_ik)) continue;
      double* row_i = dm.dist_.data() + dm.idx(i, 0);
      int* next_i = dm.next_.data() + dm.idx(i, 0);
      int via = dm.next_[dm.idx(i, k)];
      for (int j = 0; j < n; ++j) {
        double cand = d_ik + row_k[j];
        if (cand < row_i[j]) {
          row_i[j] = cand;
          next_i[j] = via;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(dm.dist_[dm.idx(i, j)])) {
        throw Error("network is disconnected: no path between nodes " +
                    std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  return dm;
}

std::pair<std::vector<int>, double> path_between(const DistanceMatrix& dm,
                                                 int from, int to) {
  if (from < 0 || from >= dm.size() || to < 0 || to >= dm.size()) {
    throw std::out_of_range("node id out of range: " + std::to_string(from) +
                            " -> " + std::to_string(to));
  }
  return {dm.path(from, to), dm.at(from, to)};
}

}  // namespace evplan
