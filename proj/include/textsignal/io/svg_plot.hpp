#pragma once

#include <string>
#include <vector>

#include "textsignal/core/points.hpp"

namespace tsig::io {

struct SvgOptions {
    int width = 900;
    int height = 900;
    double point_radius = 1.8;
    std::string title;
};

struct LegendEntry {
    std::string label;
    std::string color;
};

// Headless scatter rendering of a 2D point set; one <circle> element per
// point, filled with the caller-provided color. Deterministic output.
std::string render_scatter_svg(const PointMatrix& y2, const std::vector<std::string>& fills,
                               const std::vector<LegendEntry>& legend, const SvgOptions& opts);

// Categorical palette (16 entries, cycled) and a blue-to-red score gradient.
std::string categorical_color(int index);
std::string score_color(double score);

}  // namespace tsig::io
