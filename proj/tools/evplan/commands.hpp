#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace evplan::cli {

struct GenNetworkOptions {
  std::uint64_t seed = 1;
  std::string out = "network.json";
  int n_nodes = 100;
  int n_branches = 203;
  double region_km = 30.0;
  double max_branch_km = 7.0;
  double cluster_spread_km = 6.5;
  std::array<int, 4> zone_counts{25, 25, 25, 25};
  bool zone_counts_set = false;  // true when given on the command line
  int max_attempts = 40;
};

struct GenDemandOptions {
  std::string network;
  std::uint64_t seed = 1;
  std::string out = "routes.json";
  std::string csv_out;      // optional
  std::string traffic_out;  // optional
  int n_routes = 10000;
  int min_nodes = 2;
  int max_nodes = 24;
  double continue_prob = 0.5;
  std::array<double, 4> origin_probs{0.45, 0.30, 0.15, 0.10};
  std::array<double, 4> dest_probs{0.45, 0.30, 0.15, 0.10};
  int max_attempts_per_route = 20000;
  double battery_kwh = 50.0;
  double consumption = 0.25;
  double station_reach_km = 7.0;
  double region_km = 30.0;      // network validation limits
  double max_branch_km = 7.0;
};

struct EvaluateOptions {
  std::string network;
  std::string routes;
  std::string plan;
  std::uint64_t seed = 1;
  double battery_kwh = 50.0;
  double consumption = 0.25;
  std::string dump_outcomes;  // optional JSONL path
  double region_km = 30.0;
  double max_branch_km = 7.0;
};

struct OptimizeOptions {
  std::string network;
  std::string routes;
  std::string out_dir;
  std::uint64_t seed = 1;
  int pop_size = 1500;
  int k = 15;
  double p_cross = 0.3;
  double p_mut = 0.2;
  int max_iter = 300;
  double selection_floor = 0.01;
  int threads = 0;  // 0: EVPLAN_THREADS or hardware concurrency
  double battery_kwh = 50.0;
  double consumption = 0.25;
  bool verbose = false;
  double region_km = 30.0;
  double max_branch_km = 7.0;
};

struct ReportOptions {
  std::string run_dir;
  std::string out_dir;  // defaults to <run_dir>/report
  double region_km = 30.0;
  double max_branch_km = 7.0;
};

int run_gen_network(const GenNetworkOptions& opt);
int run_gen_demand(const GenDemandOptions& opt);
int run_evaluate(const EvaluateOptions& opt);
int run_optimize(const OptimizeOptions& opt);
int run_report(const ReportOptions& opt);

}  // namespace evplan::cli
