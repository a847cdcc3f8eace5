#include "evplan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace evplan {
namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest round-trip representation, same as the JSON writer uses.
std::string num(double v) { return nlohmann::json(v).dump(); }

[[noreturn]] void parse_fail(const char* what, const std::exception& e) {
  throw Error(std::string("failed to parse ") + what + ": " + e.what());
}

Zone parse_zone(const std::string& name, const char* context) {
  auto zone = zone_from_string(name);
  if (!zone) {
    throw Error(std::string(context) + ": unknown zone \"" + name + "\"");
  }
  return *zone;
}

}  // namespace

std::string network_to_json(const Network& net) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const Node& n : net.nodes()) {
    doc["nodes"].push_back(ordered_json{
        {"id", n.id}, {"x", n.x}, {"y", n.y}, {"zone", to_string(n.zone)}});
  }
  doc["branches"] = ordered_json::array();
  for (const Branch& b : net.branches()) {
    doc["branches"].push_back(
        ordered_json{{"u", b.u}, {"v", b.v}, {"length_km", b.length_km}});
  }
  return doc.dump(2) + "\n";
}

Network network_from_json(const std::string& text,
                          const ValidationLimits& limits) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    parse_fail("network JSON", e);
  }
  std::vector<Node> nodes;
  std::vector<Branch> branches;
  try {
    for (const auto& jn : doc.at("nodes")) {
      nodes.push_back({jn.at("id").get<int>(), jn.at("x").get<double>(),
                       jn.at("y").get<double>(),
                       parse_zone(jn.at("zone").get<std::string>(), "node")});
    }
    for (const auto& jb : doc.at("branches")) {
      branches.push_back({jb.at("u").get<int>(), jb.at("v").get<int>(),
                          jb.at("length_km").get<double>()});
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    parse_fail("network JSON", e);
  }
  Network net(std::move(nodes), std::move(branches));
  ValidationReport report = validate_network(net, limits);
  if (!report.ok()) {
    std::string msg = "network file violates invariants:";
    std::size_t shown = std::min<std::size_t>(report.violations.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
      msg += "\n  - " + report.violations[i].message;
    }
    if (report.violations.size() > shown) {
      msg += "\n  (+" + std::to_string(report.violations.size() - shown) +
             " more)";
    }
    throw Error(msg);
  }
  return net;
}

std::string routes_to_json(std::span<const Route> routes) {
  ordered_json doc = ordered_json::array();
  for (const Route& r : routes) {
    doc.push_back(ordered_json{{"nodes", r.nodes},
                               {"origin_zone", to_string(r.origin_zone)},
                               {"dest_zone", to_string(r.dest_zone)},
                               {"initial_soc_kwh", r.initial_soc_kwh}});
  }
  return doc.dump() + "\n";
}

std::vector<Route> routes_from_json(const std::string& text) {
  std::vector<Route> routes;
  try {
    ordered_json doc = ordered_json::parse(text);
    routes.reserve(doc.size());
    for (const auto& jr : doc) {
      Route r;
      r.nodes = jr.at("nodes").get<std::vector<int>>();
      r.origin_zone =
          parse_zone(jr.at("origin_zone").get<std::string>(), "route");
      r.dest_zone = parse_zone(jr.at("dest_zone").get<std::string>(), "route");
      r.initial_soc_kwh = jr.at("initial_soc_kwh").get<double>();
      routes.push_back(std::move(r));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    parse_fail("routes JSON", e);
  }
  return routes;
}

void validate_routes(const Network& net, std::span<const Route> routes,
                     double battery_kwh) {
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const Route& r = routes[i];
    auto fail = [&](const std::string& why) {
      throw Error("route " + std::to_string(i) + " invalid: " + why);
    };
    if (r.nodes.size() < 2) fail("fewer than two nodes");
    for (int id : r.nodes) {
      if (id < 0 || id >= net.node_count()) {
        fail("node id " + std::to_string(id) + " out of range");
      }
    }
    std::vector<int> sorted = r.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail("repeated node");
    }
    for (std::size_t j = 0; j + 1 < r.nodes.size(); ++j) {
      if (net.branch_index(r.nodes[j], r.nodes[j + 1]) < 0) {
        fail("nodes " + std::to_string(r.nodes[j]) + " and " +
             std::to_string(r.nodes[j + 1]) + " are not adjacent");
      }
    }
    if (net.nodes()[r.nodes.front()].zone != r.origin_zone) {
      fail("first node not in the origin zone");
    }
    if (net.nodes()[r.nodes.back()].zone != r.dest_zone) {
      fail("last node not in the destination zone");
    }
    if (!(r.initial_soc_kwh > 0.0) || r.initial_soc_kwh > battery_kwh) {
      fail("initial SOC " + std::to_string(r.initial_soc_kwh) +
           " kWh outside (0, " + std::to_string(battery_kwh) + "]");
    }
  }
}

std::string routes_to_csv(std::span<const Route> routes) {
  std::string out = "nodes,origin_zone,dest_zone,initial_soc_kwh\n";
  for (const Route& r : routes) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      if (i) out += '-';
      out += std::to_string(r.nodes[i]);
    }
    out += ',';
    out += to_string(r.origin_zone);
    out += ',';
    out += to_string(r.dest_zone);
    out += ',';
    out += num(r.initial_soc_kwh);
    out += '\n';
  }
  return out;
}

std::string traffic_to_csv(const Network& net, std::span<const long> counts) {
  if (counts.size() != static_cast<std::size_t>(net.branch_count())) {
    throw Error("traffic counts do not match the branch count");
  }
  std::string out = "u,v,count\n";
  for (int i = 0; i < net.branch_count(); ++i) {
    const Branch& b = net.branches()[i];
    out += std::to_string(b.u) + ',' + std::to_string(b.v) + ',' +
           std::to_string(counts[i]) + '\n';
  }
  return out;
}

std::string plan_to_json(const StationPlan& plan) {
  ordered_json doc{{"stations", plan.stations}};
  return doc.dump(2) + "\n";
}

StationPlan plan_from_json(const std::string& text) {
  try {
    ordered_json doc = ordered_json::parse(text);
    return StationPlan::of(doc.at("stations").get<std::vector<int>>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    parse_fail("plan JSON", e);
  }
}

std::string history_to_csv(const GaHistory& history) {
  std::string out = "iteration,best_fitness_km,mean_fitness_km,best_so_far_km\n";
  for (const GaIteration& it : history.entries) {
    out += std::to_string(it.iteration) + ',' + num(it.best_km) + ',' +
           num(it.mean_km) + ',' + num(it.best_so_far_km) + '\n';
  }
  return out;
}

std::vector<HistoryRow> history_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "iteration,best_fitness_km,mean_fitness_km,best_so_far_km") {
    throw Error("history CSV missing the expected header row");
  }
  std::vector<HistoryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    HistoryRow row;
    char* end = nullptr;
    const char* p = line.c_str();
    row.iteration = static_cast<int>(std::strtol(p, &end, 10));
    if (*end != ',') throw Error("history CSV: malformed row: " + line);
    row.best_km = std::strtod(end + 1, &end);
    if (*end != ',') throw Error("history CSV: malformed row: " + line);
    row.mean_km = std::strtod(end + 1, &end);
    if (*end != ',') throw Error("history CSV: malformed row: " + line);
    row.best_so_far_km = std::strtod(end + 1, &end);
    rows.push_back(row);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path);
}

std::string content_digest(std::string_view content) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace evplan
