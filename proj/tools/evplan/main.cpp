#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "evplan/network.hpp"
#include "evplan/version.hpp"

namespace {

using namespace evplan::cli;

void add_limits(CLI::App* cmd, double& region, double& cap) {
  cmd->add_option("--region-km", region,
                  "Region bound used when validating the network file");
  cmd->add_option("--max-branch-km", cap,
                  "Branch length cap used when validating the network file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EV charging station siting toolkit"};
  app.set_version_flag("--version", evplan::kVersion);
  app.require_subcommand(1);

  GenNetworkOptions gn;
  CLI::App* gen_network =
      app.add_subcommand("gen-network", "Generate a synthetic road network");
  gen_network->set_config("--config");
  gen_network->add_option("--seed", gn.seed, "Master seed");
  gen_network->add_option("--out", gn.out, "Output network JSON path");
  gen_network->add_option("--n-nodes", gn.n_nodes, "Node count");
  gen_network->add_option("--n-branches", gn.n_branches, "Branch count");
  gen_network->add_option("--region-km", gn.region_km, "Region side length");
  gen_network->add_option("--max-branch-km", gn.max_branch_km,
                          "Strict branch length cap");
  gen_network->add_option("--cluster-spread-km", gn.cluster_spread_km,
                          "Zone cluster jitter radius");
  gen_network
      ->add_option("--zone-counts", gn.zone_counts,
                   "Nodes per zone: residential,commercial,industrial,other")
      ->delimiter(',');
  gen_network->add_option("--max-attempts", gn.max_attempts,
                          "Generation retries before giving up");

  GenDemandOptions gd;
  CLI::App* gen_demand =
      app.add_subcommand("gen-demand", "Generate synthetic travel routes");
  gen_demand->set_config("--config");
  gen_demand->add_option("--network", gd.network, "Network JSON file")
      ->required();
  gen_demand->add_option("--seed", gd.seed, "Master seed");
  gen_demand->add_option("--out", gd.out, "Output routes JSON path");
  gen_demand->add_option("--csv", gd.csv_out, "Also write routes as CSV");
  gen_demand->add_option("--traffic", gd.traffic_out,
                         "Also write per-branch traffic counts CSV");
  gen_demand->add_option("--n-routes", gd.n_routes, "Routes to generate");
  gen_demand->add_option("--min-nodes", gd.min_nodes, "Minimum route nodes");
  gen_demand->add_option("--max-nodes", gd.max_nodes, "Maximum route nodes");
  gen_demand->add_option("--continue-prob", gd.continue_prob,
                         "Chance an accepted route keeps growing");
  gen_demand
      ->add_option("--origin-probs", gd.origin_probs,
                   "Origin zone probabilities (4 values)")
      ->delimiter(',');
  gen_demand
      ->add_option("--dest-probs", gd.dest_probs,
                   "Destination zone probabilities (4 values)")
      ->delimiter(',');
  gen_demand->add_option("--max-attempts-per-route", gd.max_attempts_per_route,
                         "Growth attempts allowed between acceptances");
  gen_demand->add_option("--battery-kwh", gd.battery_kwh, "Battery capacity");
  gen_demand->add_option("--consumption", gd.consumption,
                         "Consumption in kWh per km");
  gen_demand->add_option("--station-reach-km", gd.station_reach_km,
                         "Assumed distance to the nearest charging option");
  add_limits(gen_demand, gd.region_km, gd.max_branch_km);

  EvaluateOptions ev;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a station plan against routes");
  evaluate->set_config("--config");
  evaluate->add_option("--network", ev.network, "Network JSON file")
      ->required();
  evaluate->add_option("--routes", ev.routes, "Routes JSON file")->required();
  evaluate->add_option("--plan", ev.plan, "Plan JSON file")->required();
  evaluate->add_option("--seed", ev.seed, "Tie-break seed");
  evaluate->add_option("--battery-kwh", ev.battery_kwh, "Battery capacity");
  evaluate->add_option("--consumption", ev.consumption,
                       "Consumption in kWh per km");
  evaluate->add_option("--dump-outcomes", ev.dump_outcomes,
                       "Write per-route outcome records (JSONL) here");
  add_limits(evaluate, ev.region_km, ev.max_branch_km);

  OptimizeOptions op;
  CLI::App* optimize =
      app.add_subcommand("optimize", "Search for a good plan with the GA");
  optimize->set_config("--config");
  optimize->add_option("--network", op.network, "Network JSON file")
      ->required();
  optimize->add_option("--routes", op.routes, "Routes JSON file")->required();
  optimize->add_option("--out", op.out_dir, "Output run directory")
      ->required();
  optimize->add_option("--seed", op.seed, "Master seed");
  optimize->add_option("--pop-size", op.pop_size, "Population size");
  optimize->add_option("--k", op.k, "Stations per plan");
  optimize->add_option("--p-cross", op.p_cross, "Crossover probability");
  optimize->add_option("--p-mut", op.p_mut, "Mutation probability");
  optimize->add_option("--max-iter", op.max_iter, "Iterations");
  optimize->add_option("--selection-floor", op.selection_floor,
                       "Roulette weight floor fraction");
  optimize->add_option("--threads", op.threads,
                       "Fitness worker count (0: EVPLAN_THREADS or auto)");
  optimize->add_option("--battery-kwh", op.battery_kwh, "Battery capacity");
  optimize->add_option("--consumption", op.consumption,
                       "Consumption in kWh per km");
  optimize->add_flag("--verbose", op.verbose,
                     "Progress line per iteration on stderr");
  add_limits(optimize, op.region_km, op.max_branch_km);

  ReportOptions rp;
  CLI::App* report =
      app.add_subcommand("report", "Render SVG maps and a run summary");
  report->add_option("--run-dir", rp.run_dir,
                     "Directory with network/routes/history/plan files")
      ->required();
  report->add_option("--out", rp.out_dir,
                     "Report output directory (default <run-dir>/report)");
  add_limits(report, rp.region_km, rp.max_branch_km);

  CLI11_PARSE(app, argc, argv);
  gn.zone_counts_set = gen_network->count("--zone-counts") > 0;

  try {
    if (gen_network->parsed()) return run_gen_network(gn);
    if (gen_demand->parsed()) return run_gen_demand(gd);
    if (evaluate->parsed()) return run_evaluate(ev);
    if (optimize->parsed()) return run_optimize(op);
    if (report->parsed()) return run_report(rp);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
