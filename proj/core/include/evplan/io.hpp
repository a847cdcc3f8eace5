#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evplan/demand.hpp"
#include "evplan/detour.hpp"
#include "evplan/ga.hpp"
#include "evplan/network.hpp"

namespace evplan {

// Serialized forms are byte-stable: identical inputs produce identical text,
// and numbers are written with shortest round-trip precision.

std::string network_to_json(const Network& net);

// Parses and validates; throws Error when the document is malformed or the
// network violates its invariants under `limits`.
Network network_from_json(const std::string& text,
                          const ValidationLimits& limits = {});

std::string routes_to_json(std::span<const Route> routes);
std::vector<Route> routes_from_json(const std::string& text);

// Structural route checks against a network: adjacency, distinct nodes,
// endpoint zones, SOC within (0, battery]. Throws Error naming the first
// offending route.
void validate_routes(const Network& net, std::span<const Route> routes,
                     double battery_kwh = 50.0);

// One row per route; nodes as dash-separated ids.
std::string routes_to_csv(std::span<const Route> routes);

// Per-branch passage counts as "u,v,count" rows.
std::string traffic_to_csv(const Network& net, std::span<const long> counts);

std::string plan_to_json(const StationPlan& plan);
StationPlan plan_from_json(const std::string& text);

struct HistoryRow {
  int iteration = 0;
  double best_km = 0.0;
  double mean_km = 0.0;
  double best_so_far_km = 0.0;
};

std::string history_to_csv(const GaHistory& history);
std::vector<HistoryRow> history_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Content digest recorded in run manifests ("fnv1a64:<16 hex digits>").
std::string content_digest(std::string_view content);

}  // namespace evplan
