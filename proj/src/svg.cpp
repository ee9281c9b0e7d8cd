#include "leakywire/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace leakywire {

namespace {

// viridis-like three-stop gradient, good enough for count/level maps
void colormap(double t, int& r, int& g, int& b) {
    t = std::clamp(t, 0.0, 1.0);
    if (t < 0.5) {
        const double u = t / 0.5;
        r = static_cast<int>(68 + u * (33 - 68));
        g = static_cast<int>(1 + u * (144 - 1));
        b = static_cast<int>(84 + u * (140 - 84));
    } else {
        const double u = (t - 0.5) / 0.5;
        r = static_cast<int>(33 + u * (253 - 33));
        g = static_cast<int>(144 + u * (231 - 144));
        b = static_cast<int>(140 + u * (37 - 140));
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string render_heatmap_svg(const HeatmapData& data) {
    const int nx = data.nx, ny = data.ny;
    const double cell = std::max(6.0, std::min(28.0, 560.0 / std::max(nx, ny)));
    const double ml = 90, mt = 50, mr = 110, mb = 70;
    const double w = ml + nx * cell + mr;
    const double h = mt + ny * cell + mb;

    double vmin = 0.0, vmax = 1.0;
    bool first = true;
    for (double v : data.cells) {
        if (std::isnan(v)) continue;
        if (first) {
            vmin = vmax = v;
            first = false;
        } else {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    }
    if (vmax <= vmin) vmax = vmin + 1.0;

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
      << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << fmt(ml) << "\" y=\"28\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << data.title << "</text>\n";

    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double v = data.cells[static_cast<std::size_t>(iy) * nx + ix];
            const double px = ml + ix * cell;
            const double py = mt + (ny - 1 - iy) * cell;  // y grows upward
            int r = 230, g = 230, b = 230;
            if (!std::isnan(v)) colormap((v - vmin) / (vmax - vmin), r, g, b);
            char rect[256];
            std::snprintf(rect, sizeof rect,
                          "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                          "fill=\"rgb(%d,%d,%d)\"/>\n",
                          px, py, cell, cell, r, g, b);
            s << rect;
            if (!data.boundary.empty() &&
                data.boundary[static_cast<std::size_t>(iy) * nx + ix]) {
                char mark[256];
                std::snprintf(mark, sizeof mark,
                              "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                              "fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n",
                              px + 0.6, py + 0.6, cell - 1.2, cell - 1.2);
                s << mark;
            }
        }
    }

    // axis tick labels (thinned when dense)
    const int x_step = std::max(1, nx / 12);
    for (int ix = 0; ix < nx; ix += x_step) {
        if (ix >= static_cast<int>(data.x_labels.size())) break;
        const double px = ml + ix * cell + cell / 2;
        s << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ny * cell + 18)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
          << data.x_labels[ix] << "</text>\n";
    }
    const int y_step = std::max(1, ny / 12);
    for (int iy = 0; iy < ny; iy += y_step) {
        if (iy >= static_cast<int>(data.y_labels.size())) break;
        const double py = mt + (ny - 1 - iy) * cell + cell / 2 + 4;
        s << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(py)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
          << data.y_labels[iy] << "</text>\n";
    }
    s << "<text x=\"" << fmt(ml + nx * cell / 2) << "\" y=\"" << fmt(h - 18)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << data.x_title << "</text>\n";
    s << "<text x=\"22\" y=\"" << fmt(mt + ny * cell / 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 22 "
      << fmt(mt + ny * cell / 2) << ")\">" << data.y_title << "</text>\n";

    // legend bar
    const double lx = ml + nx * cell + 24;
    const int steps = 24;
    const double lh = std::max(120.0, ny * cell * 0.6);
    for (int i = 0; i < steps; ++i) {
        int r, g, b;
        colormap(static_cast<double>(i) / (steps - 1), r, g, b);
        char rect[256];
        std::snprintf(rect, sizeof rect,
                      "<rect x=\"%g\" y=\"%g\" width=\"16\" height=\"%g\" "
                      "fill=\"rgb(%d,%d,%d)\"/>\n",
                      lx, mt + lh - (i + 1) * lh / steps, lh / steps + 0.5, r, g, b);
        s << rect;
    }
    s << "<text x=\"" << fmt(lx + 20) << "\" y=\"" << fmt(mt + lh)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(vmin) << "</text>\n";
    s << "<text x=\"" << fmt(lx + 20) << "\" y=\"" << fmt(mt + 10)
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(vmax) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace leakywire
