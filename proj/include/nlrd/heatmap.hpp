#pragma once

#include <string>

#include "nlrd/simulate.hpp"

namespace nlrd {

// Deterministic space-time heatmap of one species: snapshots on the x axis,
// grid nodes on the y axis, viridis-style color scale normalized to the
// trajectory maximum. Pure function of its inputs; no timestamps or RNG.
std::string heatmap_svg(const Trajectory& trajectory, std::size_t species, const Grid& grid,
                        const std::string& title);

void write_heatmap_svg(const std::string& path, const Trajectory& trajectory, std::size_t species,
                       const Grid& grid, const std::string& title);

}  // namespace nlrd
