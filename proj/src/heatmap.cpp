#include "nlrd/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlrd/errors.hpp"

namespace nlrd {

namespace {

// Five-stop approximation of the viridis color scale.
struct Stop {
    double t;
    double r, g, b;
};
constexpr Stop kStops[] = {
    {0.00, 68, 1, 84},   {0.25, 59, 82, 139},   {0.50, 33, 145, 140},
    {0.75, 94, 201, 98}, {1.00, 253, 231, 37},
};

void color_of(double t, int& r, int& g, int& b) {
    t = std::clamp(t, 0.0, 1.0);
    for (std::size_t k = 0; k + 1 < std::size(kStops); ++k) {
        if (t <= kStops[k + 1].t) {
            double w = (t - kStops[k].t) / (kStops[k + 1].t - kStops[k].t);
            r = static_cast<int>(std::lround(kStops[k].r + w * (kStops[k + 1].r - kStops[k].r)));
            g = static_cast<int>(std::lround(kStops[k].g + w * (kStops[k + 1].g - kStops[k].g)));
            b = static_cast<int>(std::lround(kStops[k].b + w * (kStops[k + 1].b - kStops[k].b)));
            return;
        }
    }
    r = 253, g = 231, b = 37;
}

}  // namespace

std::string heatmap_svg(const Trajectory& trajectory, std::size_t species, const Grid& grid,
                        const std::string& title) {
    if (trajectory.snapshots.empty()) throw ConfigError("heatmap_svg: empty trajectory");
    const std::size_t m = trajectory.snapshots.front().values.rows;
    if (species >= m) throw ConfigError("heatmap_svg: species index out of range");
    const std::size_t nt = trajectory.snapshots.size();
    const std::size_t n = grid.n_nodes();

    double raw_max = 0.0;
    for (const auto& snap : trajectory.snapshots)
        for (std::size_t j = 0; j < n; ++j) raw_max = std::max(raw_max, snap.values(species, j));
    // Color scale denominator; the title still reports the true maximum.
    const double vmax = raw_max > 0.0 ? raw_max : 1.0;

    const int plot_w = 720, plot_h = 420, margin_l = 60, margin_t = 40, margin_b = 40,
              margin_r = 20;
    const int width = margin_l + plot_w + margin_r, height = margin_t + plot_h + margin_b;
    const double cw = static_cast<double>(plot_w) / static_cast<double>(nt);
    const double ch = static_cast<double>(plot_h) / static_cast<double>(n);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin_l << "\" y=\"24\" font-family=\"monospace\" font-size=\"16\">"
        << title << " (max " << raw_max << ")</text>\n";

    char buf[160];
    for (std::size_t s = 0; s < nt; ++s) {
        for (std::size_t j = 0; j < n; ++j) {
            int r, g, b;
            color_of(trajectory.snapshots[s].values(species, j) / vmax, r, g, b);
            double x = margin_l + static_cast<double>(s) * cw;
            // Node j = 0 is the bottom row.
            double y = margin_t + static_cast<double>(n - 1 - j) * ch;
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                          "fill=\"rgb(%d,%d,%d)\"/>\n",
                          x, y, cw + 0.05, ch + 0.05, r, g, b);
            svg << buf;
        }
    }

    // Axis labels: time range and reference-domain extent.
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"monospace\" font-size=\"12\">t=%g</text>\n",
                  margin_l, margin_t + plot_h + 18, trajectory.snapshots.front().time);
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"monospace\" font-size=\"12\" "
                  "text-anchor=\"end\">t=%g</text>\n",
                  margin_l + plot_w, margin_t + plot_h + 18, trajectory.snapshots.back().time);
    svg << buf;
    svg << "<text x=\"12\" y=\"" << margin_t + 12
        << "\" font-family=\"monospace\" font-size=\"12\">y=1</text>\n";
    svg << "<text x=\"12\" y=\"" << margin_t + plot_h
        << "\" font-family=\"monospace\" font-size=\"12\">y=0</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_heatmap_svg(const std::string& path, const Trajectory& trajectory, std::size_t species,
                       const Grid& grid, const std::string& title) {
    std::ofstream out(path);
    if (!out) throw ConfigError("heatmap: cannot open output file " + path);
    out << heatmap_svg(trajectory, species, grid, title);
}

}  // namespace nlrd
