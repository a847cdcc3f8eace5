#pragma once

#include <span>
#include <string>

#include "evplan/io.hpp"

namespace evplan {

// Network map: branches colored on a blue-to-red ramp by traffic count,
// nodes colored by zone, plan stations marked with red circles. `plan` may
// be null.
std::string render_network_map_svg(const Network& net,
                                   std::span<const long> flow,
                                   const StationPlan* plan);

// Best-so-far (and per-iteration best) fitness against the iteration index.
std::string render_convergence_svg(std::span<const HistoryRow> rows);

// Plain-text run summary: final fitness, station list, per-zone counts.
std::string render_summary(const Network& net, const StationPlan& plan,
                           std::span<const HistoryRow> rows,
                           std::span<const Route> routes);

}  // namespace evplan
