#include "textsignal/io/svg_plot.hpp"

#include <algorithm>
#include <cstdio>

#include "textsignal/error.hpp"

namespace tsig::io {

namespace {

const char* kPalette[16] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string categorical_color(int index) {
    int i = index % 16;
    if (i < 0) i += 16;
    return kPalette[i];
}

std::string score_color(double score) {
    double t = std::clamp(score, 0.0, 1.0);
    // blue (low pole) to red (high pole) through grey
    int r = static_cast<int>(40 + t * (214 - 40));
    int g = static_cast<int>(90 + (t < 0.5 ? t : 1.0 - t) * 2 * (150 - 90));
    int b = static_cast<int>(200 - t * (200 - 45));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string render_scatter_svg(const PointMatrix& y2, const std::vector<std::string>& fills,
                               const std::vector<LegendEntry>& legend, const SvgOptions& opts) {
    if (y2.dim != 2) throw Error(ErrorKind::parameter, "scatter plot expects 2D points");
    if (fills.size() != y2.n) throw Error(ErrorKind::parameter, "one fill color per point required");

    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
    if (y2.n > 0) {
        lo_x = hi_x = y2.row(0)[0];
        lo_y = hi_y = y2.row(0)[1];
        for (std::size_t i = 1; i < y2.n; ++i) {
            lo_x = std::min(lo_x, y2.row(i)[0]);
            hi_x = std::max(hi_x, y2.row(i)[0]);
            lo_y = std::min(lo_y, y2.row(i)[1]);
            hi_y = std::max(hi_y, y2.row(i)[1]);
        }
    }
    double span_x = hi_x - lo_x > 0.0 ? hi_x - lo_x : 1.0;
    double span_y = hi_y - lo_y > 0.0 ? hi_y - lo_y : 1.0;
    const double margin = 30.0;
    double plot_w = opts.width - 2 * margin;
    double plot_h = opts.height - 2 * margin;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) +
           "\" height=\"" + std::to_string(opts.height) + "\" viewBox=\"0 0 " +
           std::to_string(opts.width) + " " + std::to_string(opts.height) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!opts.title.empty()) {
        svg += "  <text x=\"" + fmt(opts.width / 2.0) +
               "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
               xml_escape(opts.title) + "</text>\n";
    }
    svg += "  <g stroke=\"none\">\n";
    for (std::size_t i = 0; i < y2.n; ++i) {
        // flip y: data up is screen up
        double sx = margin + (y2.row(i)[0] - lo_x) / span_x * plot_w;
        double sy = margin + (1.0 - (y2.row(i)[1] - lo_y) / span_y) * plot_h;
        svg += "    <circle cx=\"" + fmt(sx) + "\" cy=\"" + fmt(sy) + "\" r=\"" +
               fmt(opts.point_radius) + "\" fill=\"" + fills[i] + "\" fill-opacity=\"0.75\"/>\n";
    }
    svg += "  </g>\n";

    double ly = margin;
    for (const auto& entry : legend) {
        svg += "  <rect x=\"" + fmt(opts.width - margin - 110.0) + "\" y=\"" + fmt(ly) +
               "\" width=\"10\" height=\"10\" fill=\"" + entry.color + "\"/>\n";
        svg += "  <text x=\"" + fmt(opts.width - margin - 96.0) + "\" y=\"" + fmt(ly + 9.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(entry.label) +
               "</text>\n";
        ly += 16.0;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace tsig::io
