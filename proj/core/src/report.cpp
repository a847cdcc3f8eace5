#include "evplan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace evplan {
namespace {

constexpr double kCanvas = 840.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Linear blue-to-red ramp over [0, 1].
std::string flow_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r = static_cast<int>(std::lround(255.0 * t));
  int b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, 40, b);
  return buf;
}

const char* zone_color(Zone z) {
  switch (z) {
    case Zone::Residential: return "#2e7d32";
    case Zone::Commercial: return "#1565c0";
    case Zone::Industrial: return "#616161";
    case Zone::Other: return "#ef6c00";
  }
  return "#000000";
}

}  // namespace

std::string render_network_map_svg(const Network& net,
                                   std::span<const long> flow,
                                   const StationPlan* plan) {
  double extent = 1.0;
  for (const Node& n : net.nodes()) {
    extent = std::max({extent, n.x, n.y});
  }
  const double scale = (kCanvas - 2.0 * kMargin) / extent;
  auto sx = [&](double x) { return kMargin + x * scale; };
  auto sy = [&](double y) { return kCanvas - kMargin - y * scale; };

  long max_flow = 0;
  long min_flow = 0;
  if (!flow.empty()) {
    max_flow = *std::max_element(flow.begin(), flow.end());
    min_flow = *std::min_element(flow.begin(), flow.end());
  }
  const double span = static_cast<double>(max_flow - min_flow);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kCanvas) +
         "\" height=\"" + fmt(kCanvas) + "\" viewBox=\"0 0 " + fmt(kCanvas) +
         " " + fmt(kCanvas) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int i = 0; i < net.branch_count(); ++i) {
    const Branch& b = net.branches()[i];
    double t = 0.0;
    if (i < static_cast<int>(flow.size()) && span > 0.0) {
      t = static_cast<double>(flow[i] - min_flow) / span;
    }
    svg += "<line x1=\"" + fmt(sx(net.nodes()[b.u].x)) + "\" y1=\"" +
           fmt(sy(net.nodes()[b.u].y)) + "\" x2=\"" +
           fmt(sx(net.nodes()[b.v].x)) + "\" y2=\"" +
           fmt(sy(net.nodes()[b.v].y)) + "\" stroke=\"" + flow_color(t) +
           "\" stroke-width=\"2.2\"/>\n";
  }

  for (const Node& n : net.nodes()) {
    svg += "<circle cx=\"" + fmt(sx(n.x)) + "\" cy=\"" + fmt(sy(n.y)) +
           "\" r=\"3.2\" fill=\"" + zone_color(n.zone) + "\"/>\n";
  }

  if (plan != nullptr) {
    for (int id : plan->stations) {
      const Node& n = net.nodes()[id];
      svg += "<circle cx=\"" + fmt(sx(n.x)) + "\" cy=\"" + fmt(sy(n.y)) +
             "\" r=\"9\" fill=\"none\" stroke=\"#d50000\" "
             "stroke-width=\"2.5\"/>\n";
    }
  }

  double ly = 20.0;
  for (Zone z : kAllZones) {
    svg += "<circle cx=\"18\" cy=\"" + fmt(ly) + "\" r=\"4\" fill=\"" +
           zone_color(z) + "\"/><text x=\"28\" y=\"" + fmt(ly + 4.0) +
           "\" font-size=\"13\" font-family=\"sans-serif\">" + to_string(z) +
           "</text>\n";
    ly += 18.0;
  }
  if (!flow.empty()) {
    svg += "<text x=\"18\" y=\"" + fmt(ly + 6.0) +
           "\" font-size=\"13\" font-family=\"sans-serif\">flow " +
           std::to_string(min_flow) + " (blue) to " + std::to_string(max_flow) +
           " (red)</text>\n";
  }
  if (plan != nullptr) {
    svg += "<text x=\"18\" y=\"" + fmt(ly + 24.0) +
           "\" font-size=\"13\" font-family=\"sans-serif\">red circles: "
           "charging stations</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_convergence_svg(std::span<const HistoryRow> rows) {
  const double width = 900.0;
  const double height = 540.0;
  const double ml = 90.0, mr = 30.0, mt = 30.0, mb = 60.0;

  double ymin = 0.0, ymax = 1.0;
  int xmax = 1;
  if (!rows.empty()) {
    ymin = rows[0].best_so_far_km;
    ymax = rows[0].best_km;
    for (const HistoryRow& r : rows) {
      ymin = std::min({ymin, r.best_so_far_km, r.best_km});
      ymax = std::max({ymax, r.best_so_far_km, r.best_km});
    }
    xmax = std::max(1, rows.back().iteration);
  }
  if (ymax <= ymin) ymax = ymin + 1.0;

  auto px = [&](double it) { return ml + (width - ml - mr) * it / xmax; };
  auto py = [&](double v) {
    return mt + (height - mt - mb) * (ymax - v) / (ymax - ymin);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) +
         " " + fmt(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(height - mb) +
         "\" x2=\"" + fmt(width - mr) + "\" y2=\"" + fmt(height - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
         fmt(ml) + "\" y2=\"" + fmt(height - mb) + "\" stroke=\"black\"/>\n";

  auto polyline = [&](auto value, const char* color) {
    std::string pts;
    for (const HistoryRow& r : rows) {
      pts += fmt(px(r.iteration)) + "," + fmt(py(value(r))) + " ";
    }
    return "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.8\" points=\"" + pts + "\"/>\n";
  };
  if (rows.size() == 1) {
    svg += "<circle cx=\"" + fmt(px(rows[0].iteration)) + "\" cy=\"" +
           fmt(py(rows[0].best_so_far_km)) + "\" r=\"4\" fill=\"#c62828\"/>\n";
  } else if (!rows.empty()) {
    svg += polyline([](const HistoryRow& r) { return r.best_km; }, "#90a4ae");
    svg += polyline([](const HistoryRow& r) { return r.best_so_far_km; },
                    "#c62828");
  }

  svg += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(height - mb + 34.0) +
         "\" font-size=\"14\" font-family=\"sans-serif\">iteration 0 to " +
         std::to_string(xmax) + "</text>\n";
  svg += "<text x=\"8\" y=\"" + fmt(mt + 8.0) +
         "\" font-size=\"14\" font-family=\"sans-serif\">" + fmt(ymax) +
         " km</text>\n";
  svg += "<text x=\"8\" y=\"" + fmt(height - mb) +
         "\" font-size=\"14\" font-family=\"sans-serif\">" + fmt(ymin) +
         " km</text>\n";
  svg += "<text x=\"" + fmt(width - 310.0) + "\" y=\"" + fmt(mt + 8.0) +
         "\" font-size=\"13\" font-family=\"sans-serif\">red: best so far, "
         "grey: generation best</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string render_summary(const Network& net, const StationPlan& plan,
                           std::span<const HistoryRow> rows,
                           std::span<const Route> routes) {
  std::string out;
  out += "stations: " + std::to_string(plan.size()) + "\n";
  out += "station nodes:";
  for (int id : plan.stations) out += " " + std::to_string(id);
  out += "\n";

  std::array<int, kZoneCount> per_zone{};
  for (int id : plan.stations) {
    ++per_zone[static_cast<int>(net.nodes()[id].zone)];
  }
  out += "stations per zone:";
  for (Zone z : kAllZones) {
    out += std::string(" ") + to_string(z) + "=" +
           std::to_string(per_zone[static_cast<int>(z)]);
  }
  out += "\n";
  out += "routes: " + std::to_string(routes.size()) + "\n";
  if (!rows.empty()) {
    out += "iterations: " + std::to_string(rows.back().iteration) + "\n";
    out += "initial best fitness_km: " + fmt(rows.front().best_km) + "\n";
    out += "final best fitness_km: " + fmt(rows.back().best_so_far_km) + "\n";
  }
  return out;
}

}  // namespace evplan
