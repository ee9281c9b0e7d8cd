#pragma once

#include <string>
#include <vector>

namespace leakywire {

/// Heatmap cell values laid out row-major: value(ix, iy) = cells[iy * nx + ix];
/// ix indexes the x-axis labels, iy the y-axis labels (bottom to top).
struct HeatmapData {
    int nx = 0;
    int ny = 0;
    std::vector<double> cells;       // color value per cell (NaN = empty)
    std::vector<bool> boundary;      // overlay flag per cell (feasibility region)
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    std::string x_title;
    std::string y_title;
    std::string title;
};

/// Self-contained SVG heatmap (no external renderer): colored cells, axis
/// labels, a legend bar, and an outline around the flagged region.
std::string render_heatmap_svg(const HeatmapData& data);

}  // namespace leakywire
