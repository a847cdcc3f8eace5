#include "commands.hpp"

#include <cstdio>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "evplan/demand.hpp"
#include "evplan/detour.hpp"
#include "evplan/ga.hpp"
#include "evplan/io.hpp"
#include "evplan/network.hpp"
#include "evplan/report.hpp"
#include "evplan/rng.hpp"
#include "manifest.hpp"

namespace evplan::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// The fitness evaluator draws from its own substream so that GA operator
// randomness and tie-break randomness stay independent.
constexpr std::uint64_t kEvalStream = 0x657661'6cULL;

std::string manifest_path_for(const std::string& out_file) {
  fs::path p(out_file);
  p.replace_extension(".manifest.json");
  return p.string();
}

void ensure_parent_dir(const std::string& file) {
  fs::path parent = fs::path(file).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

Network load_network(RunManifest& manifest, const std::string& path,
                     double region_km, double max_branch_km) {
  return network_from_json(read_input(manifest, path),
                           {region_km, max_branch_km});
}

void check_plan_ids(const StationPlan& plan, const Network& net) {
  for (int id : plan.stations) {
    if (id < 0 || id >= net.node_count()) {
      throw Error("plan station id " + std::to_string(id) +
                  " is not a node of the network");
    }
  }
}

}  // namespace

int run_gen_network(const GenNetworkOptions& opt) {
  NetworkConfig cfg;
  cfg.n_nodes = opt.n_nodes;
  cfg.n_branches = opt.n_branches;
  cfg.region_km = opt.region_km;
  cfg.max_branch_km = opt.max_branch_km;
  cfg.cluster_spread_km = opt.cluster_spread_km;
  cfg.max_attempts = opt.max_attempts;
  if (opt.zone_counts_set) {
    cfg.zone_counts = opt.zone_counts;
  } else {
    // Spread nodes evenly over the four zones, remainder to the first ones.
    int base = opt.n_nodes / 4, rem = opt.n_nodes % 4;
    for (int z = 0; z < 4; ++z) cfg.zone_counts[z] = base + (z < rem ? 1 : 0);
  }

  ordered_json config{{"n_nodes", cfg.n_nodes},
                      {"n_branches", cfg.n_branches},
                      {"region_km", cfg.region_km},
                      {"max_branch_km", cfg.max_branch_km},
                      {"cluster_spread_km", cfg.cluster_spread_km},
                      {"zone_counts", cfg.zone_counts},
                      {"max_attempts", cfg.max_attempts}};
  RunManifest manifest("gen-network", opt.seed, config);

  Network net = generate_network(cfg, opt.seed);

  ensure_parent_dir(opt.out);
  write_output(manifest, opt.out, network_to_json(net));
  write_file(manifest_path_for(opt.out), manifest.to_json());
  std::printf("wrote %s (%d nodes, %d branches)\n", opt.out.c_str(),
              net.node_count(), net.branch_count());
  return 0;
}

int run_gen_demand(const GenDemandOptions& opt) {
  DemandConfig cfg;
  cfg.n_routes = opt.n_routes;
  cfg.min_nodes = opt.min_nodes;
  cfg.max_nodes = opt.max_nodes;
  cfg.continue_prob = opt.continue_prob;
  cfg.origin_zone_probs = opt.origin_probs;
  cfg.dest_zone_probs = opt.dest_probs;
  cfg.max_attempts_per_route = opt.max_attempts_per_route;
  cfg.station_reach_km = opt.station_reach_km;
  EvParams ev{opt.battery_kwh, opt.consumption};

  ordered_json config{{"network", opt.network},
                      {"n_routes", cfg.n_routes},
                      {"min_nodes", cfg.min_nodes},
                      {"max_nodes", cfg.max_nodes},
                      {"continue_prob", cfg.continue_prob},
                      {"origin_zone_probs", cfg.origin_zone_probs},
                      {"dest_zone_probs", cfg.dest_zone_probs},
                      {"max_attempts_per_route", cfg.max_attempts_per_route},
                      {"station_reach_km", cfg.station_reach_km},
                      {"battery_kwh", ev.battery_kwh},
                      {"consumption_kwh_per_km", ev.consumption_kwh_per_km}};
  RunManifest manifest("gen-demand", opt.seed, config);

  Network net =
      load_network(manifest, opt.network, opt.region_km, opt.max_branch_km);
  std::vector<Route> routes = generate_routes(net, cfg, ev, opt.seed);

  ensure_parent_dir(opt.out);
  write_output(manifest, opt.out, routes_to_json(routes));
  if (!opt.csv_out.empty()) {
    ensure_parent_dir(opt.csv_out);
    write_output(manifest, opt.csv_out, routes_to_csv(routes));
  }
  if (!opt.traffic_out.empty()) {
    ensure_parent_dir(opt.traffic_out);
    write_output(manifest, opt.traffic_out,
                 traffic_to_csv(net, traffic_flow(net, routes)));
  }
  write_file(manifest_path_for(opt.out), manifest.to_json());
  std::printf("wrote %s (%zu routes)\n", opt.out.c_str(), routes.size());
  return 0;
}

int run_evaluate(const EvaluateOptions& opt) {
  ordered_json config{{"network", opt.network},
                      {"routes", opt.routes},
                      {"plan", opt.plan},
                      {"battery_kwh", opt.battery_kwh},
                      {"consumption_kwh_per_km", opt.consumption}};
  RunManifest manifest("evaluate", opt.seed, config);

  Network net =
      load_network(manifest, opt.network, opt.region_km, opt.max_branch_km);
  std::vector<Route> routes =
      routes_from_json(read_input(manifest, opt.routes));
  validate_routes(net, routes, opt.battery_kwh);
  StationPlan plan = plan_from_json(read_input(manifest, opt.plan));
  check_plan_ids(plan, net);

  DistanceMatrix dm = all_pairs_shortest_paths(net);
  SimParams sim{EvParams{opt.battery_kwh, opt.consumption}};

  if (!opt.dump_outcomes.empty()) {
    std::string dump;
    double total = 0.0;
    for (std::size_t r = 0; r < routes.size(); ++r) {
      RouteOutcome out =
          simulate_route(net, dm, plan, routes[r], sim,
                         derive_seed(opt.seed, {static_cast<std::uint64_t>(r)}));
      total += out.l_min_km;
      ordered_json events = ordered_json::array();
      for (const DetourEvent& e : out.events) {
        events.push_back(ordered_json{{"node_index", e.node_index},
                                      {"deficit", e.deficit},
                                      {"accessible", e.accessible},
                                      {"chosen_station", e.chosen_station},
                                      {"l_detour_km", e.l_detour_km},
                                      {"l_rest_km", e.l_rest_km},
                                      {"infeasible_leg", e.infeasible_leg}});
      }
      ordered_json rec{{"route", r},
                       {"l_min_km", out.l_min_km},
                       {"completed", out.completed},
                       {"recorded_ls", out.recorded_ls},
                       {"events", events}};
      dump += rec.dump() + "\n";
    }
    ensure_parent_dir(opt.dump_outcomes);
    write_output(manifest, opt.dump_outcomes, dump);
    write_file(manifest_path_for(opt.dump_outcomes), manifest.to_json());
    std::printf("fitness_km %.6f\n", total);
    return 0;
  }

  double total = evaluate_plan(net, dm, plan, routes, sim, opt.seed);
  std::printf("fitness_km %.6f\n", total);
  return 0;
}

int run_optimize(const OptimizeOptions& opt) {
  GaConfig cfg;
  cfg.pop_size = opt.pop_size;
  cfg.k = opt.k;
  cfg.p_cross = opt.p_cross;
  cfg.p_mut = opt.p_mut;
  cfg.max_iter = opt.max_iter;
  cfg.seed = opt.seed;
  cfg.selection_floor = opt.selection_floor;

  ordered_json config{{"network", opt.network},
                      {"routes", opt.routes},
                      {"pop_size", cfg.pop_size},
                      {"k", cfg.k},
                      {"p_cross", cfg.p_cross},
                      {"p_mut", cfg.p_mut},
                      {"max_iter", cfg.max_iter},
                      {"selection_floor", cfg.selection_floor},
                      {"threads", opt.threads},
                      {"battery_kwh", opt.battery_kwh},
                      {"consumption_kwh_per_km", opt.consumption}};
  RunManifest manifest("optimize", opt.seed, config);

  std::string network_bytes = read_input(manifest, opt.network);
  std::string routes_bytes = read_input(manifest, opt.routes);
  Network net =
      network_from_json(network_bytes, {opt.region_km, opt.max_branch_km});
  std::vector<Route> routes = routes_from_json(routes_bytes);
  validate_routes(net, routes, opt.battery_kwh);

  DistanceMatrix dm = all_pairs_shortest_paths(net);
  SimParams sim{EvParams{opt.battery_kwh, opt.consumption}};
  PlanEvaluator evaluator(net, dm, routes, sim,
                          derive_seed(opt.seed, {kEvalStream}), opt.threads);

  IterationCallback progress;
  if (opt.verbose) {
    progress = [](const GaIteration& it) {
      std::fprintf(stderr, "iter %d best %.3f mean %.3f best_so_far %.3f\n",
                   it.iteration, it.best_km, it.mean_km, it.best_so_far_km);
    };
  }

  GaResult result = run_ga(
      [&](std::span<const StationPlan> plans) {
        return evaluator.fitness_many(plans);
      },
      net.node_count(), cfg, progress);

  fs::create_directories(opt.out_dir);
  fs::path dir(opt.out_dir);
  // The run directory is self-contained: inputs are copied verbatim so the
  // report command (and any rerun) only needs the directory.
  write_output(manifest, (dir / "network.json").string(), network_bytes);
  write_output(manifest, (dir / "routes.json").string(), routes_bytes);
  write_output(manifest, (dir / "history.csv").string(),
               history_to_csv(result.history));
  write_output(manifest, (dir / "best_plan.json").string(),
               plan_to_json(result.best));
  write_file((dir / "manifest.json").string(), manifest.to_json());

  std::printf("best fitness_km %.6f after %d iterations\n", result.best_km,
              cfg.max_iter);
  std::printf("wrote %s\n", (dir / "best_plan.json").string().c_str());
  return 0;
}

int run_report(const ReportOptions& opt) {
  fs::path dir(opt.run_dir);
  const std::array<const char*, 4> needed{"network.json", "routes.json",
                                          "history.csv", "best_plan.json"};
  std::string missing;
  for (const char* name : needed) {
    if (!fs::exists(dir / name)) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw Error("run directory " + opt.run_dir +
                " is missing required files: " + missing);
  }

  ordered_json config{{"run_dir", opt.run_dir}};
  RunManifest manifest("report", 0, config);

  Network net = load_network(manifest, (dir / "network.json").string(),
                             opt.region_km, opt.max_branch_km);
  std::vector<Route> routes =
      routes_from_json(read_input(manifest, (dir / "routes.json").string()));
  auto rows =
      history_from_csv(read_input(manifest, (dir / "history.csv").string()));
  StationPlan plan =
      plan_from_json(read_input(manifest, (dir / "best_plan.json").string()));
  check_plan_ids(plan, net);

  std::vector<long> flow = traffic_flow(net, routes);

  fs::path out = opt.out_dir.empty() ? dir / "report" : fs::path(opt.out_dir);
  fs::create_directories(out);
  write_output(manifest, (out / "map.svg").string(),
               render_network_map_svg(net, flow, &plan));
  write_output(manifest, (out / "convergence.svg").string(),
               render_convergence_svg(rows));
  write_output(manifest, (out / "summary.txt").string(),
               render_summary(net, plan, rows, routes));
  write_file((out / "manifest.json").string(), manifest.to_json());

  std::printf("wrote %s\n", (out / "summary.txt").string().c_str());
  return 0;
}

}  // namespace evplan::cli
