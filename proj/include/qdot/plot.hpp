#pragma once

// Self-contained SVG output for sweep tables: a line chart for one-axis
// sweeps, one heatmap panel per measure for regular two-axis grids.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "qdot/error.hpp"
#include "qdot/sweep.hpp"

namespace qdot {

namespace svg_detail {

inline std::string num(double value, int precision = 6) {
    if (value == 0.0 || std::abs(value) < 1e-12) value = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

inline std::string escape(const std::string& s) {
    std::string out;
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

inline constexpr std::array<const char*, 4> series_colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

// Viridis-like ramp sampled at five stops.
inline std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                                                 {94, 201, 98}, {253, 231, 37}}};
    t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
    static constexpr char hex[] = "0123456789abcdef";
    buf[0] = '#';
    for (int c = 0; c < 3; ++c) {
        buf[1 + 2 * c] = hex[rgb[c] >> 4];
        buf[2 + 2 * c] = hex[rgb[c] & 15];
    }
    return std::string(buf, 7);
}

struct Range {
    double lo = 0.0, hi = 1.0;
    double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

inline Range padded(double lo, double hi) {
    if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
    return {lo, hi};
}

}  // namespace svg_detail

struct GridShape {
    std::vector<double> outer;  // first-axis values
    std::vector<double> inner;  // second-axis values (empty for 1-axis tables)
};

/// Checks that rows form a 1-axis series or a full lexicographic 2-axis grid.
inline GridShape grid_shape(const SweepTable& table) {
    GridShape shape;
    const auto& rows = table.rows;
    if (rows.empty()) throw mixed_axis_shape("plot: table has no rows");
    if (table.axis_names.size() == 1) {
        for (const auto& row : rows) shape.outer.push_back(row.axis_values.at(0));
        for (std::size_t i = 1; i < shape.outer.size(); ++i)
            if (!(shape.outer[i - 1] < shape.outer[i])) throw mixed_axis_shape("plot: 1-axis values are not increasing");
        return shape;
    }
    if (table.axis_names.size() != 2) throw mixed_axis_shape("plot: rows are neither 1- nor 2-axis");
    for (const auto& row : rows) {
        if (row.axis_values[0] != rows[0].axis_values[0]) break;
        shape.inner.push_back(row.axis_values[1]);
    }
    const std::size_t n_inner = shape.inner.size();
    if (rows.size() % n_inner != 0) throw mixed_axis_shape("plot: 2-axis rows do not form a full grid");
    for (std::size_t k = 0; k < rows.size(); k += n_inner) shape.outer.push_back(rows[k].axis_values[0]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].axis_values[0] != shape.outer[k / n_inner] || rows[k].axis_values[1] != shape.inner[k % n_inner]) {
            throw mixed_axis_shape("plot: 2-axis rows are not a regular lexicographic grid");
        }
    }
    for (std::size_t i = 1; i < shape.outer.size(); ++i)
        if (!(shape.outer[i - 1] < shape.outer[i])) throw mixed_axis_shape("plot: outer axis repeats");
    return shape;
}

inline void render_line_chart(const SweepTable& table, const GridShape& shape, std::ostream& out) {
    using namespace svg_detail;
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 30, bottom = 60;
    const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;

    const Range xr = padded(shape.outer.front(), shape.outer.back());
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : table.rows)
        for (double v : row.measure_values) lo = std::min(lo, v), hi = std::max(hi, v);
    const Range yr = padded(lo, hi);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<path d=\"M" << num(x0) << ' ' << num(y1) << " V" << num(y0) << " H" << num(x1)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xr.lo + (xr.hi - xr.lo) * t / 4.0, yv = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        const double px = xr.map(xv, x0, x1), py = yr.map(yv, y0, y1);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px) << "\" y2=\"" << num(y0 + 5)
            << "\" stroke=\"black\"/><text x=\"" << num(px) << "\" y=\"" << num(y0 + 18)
            << "\" text-anchor=\"middle\">" << num(xv, 4) << "</text>\n";
        out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(py)
            << "\" stroke=\"black\"/><text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\">" << num(yv, 4) << "</text>\n";
    }
    out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(height - 15) << "\" text-anchor=\"middle\">"
        << escape(table.axis_names[0]) << "</text>\n";

    for (std::size_t m = 0; m < table.measure_names.size(); ++m) {
        const char* color = series_colors[m % series_colors.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < table.rows.size(); ++k) {
            out << (k ? " " : "") << num(xr.map(shape.outer[k], x0, x1)) << ','
                << num(yr.map(table.rows[k].measure_values[m], y0, y1));
        }
        out << "\"/>\n";
        const double ly = top + 20.0 * m;
        out << "<line x1=\"" << num(x1 + 15) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(x1 + 40) << "\" y2=\""
            << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << num(x1 + 45) << "\" y=\""
            << num(ly + 4) << "\">" << escape(table.measure_names[m]) << "</text>\n";
    }
    out << "</svg>\n";
}

inline void render_heatmaps(const SweepTable& table, const GridShape& shape, std::ostream& out) {
    using namespace svg_detail;
    constexpr double panel_w = 360, panel_h = 340, left = 60, top = 40, plot_w = 260, plot_h = 240;
    const std::size_t panels = table.measure_names.size();
    const double width = panel_w * panels, height = panel_h;
    const std::size_t nx = shape.outer.size(), ny = shape.inner.size();
    const double cw = plot_w / nx, ch = plot_h / ny;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t m = 0; m < panels; ++m) {
        const double ox = panel_w * m + left, oy = top;
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& row : table.rows) lo = std::min(lo, row.measure_values[m]), hi = std::max(hi, row.measure_values[m]);
        const Range cr = padded(lo, hi);
        out << "<g>\n<text x=\"" << num(ox + plot_w / 2) << "\" y=\"" << num(oy - 15) << "\" text-anchor=\"middle\">"
            << escape(table.measure_names[m]) << "</text>\n";
        for (std::size_t k = 0; k < table.rows.size(); ++k) {
            const std::size_t i = k / ny, j = k % ny;
            out << "<rect x=\"" << num(ox + i * cw) << "\" y=\"" << num(oy + plot_h - (j + 1) * ch) << "\" width=\""
                << num(cw) << "\" height=\"" << num(ch) << "\" fill=\""
                << ramp(cr.map(table.rows[k].measure_values[m], 0.0, 1.0)) << "\"/>\n";
        }
        out << "<rect x=\"" << num(ox) << "\" y=\"" << num(oy) << "\" width=\"" << num(plot_w) << "\" height=\""
            << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(ox) << "\" y=\"" << num(oy + plot_h + 15) << "\">" << num(shape.outer.front(), 4)
            << "</text><text x=\"" << num(ox + plot_w) << "\" y=\"" << num(oy + plot_h + 15)
            << "\" text-anchor=\"end\">" << num(shape.outer.back(), 4) << "</text>\n";
        out << "<text x=\"" << num(ox + plot_w / 2) << "\" y=\"" << num(oy + plot_h + 32) << "\" text-anchor=\"middle\">"
            << escape(table.axis_names[0]) << "</text>\n";
        out << "<text x=\"" << num(ox - 5) << "\" y=\"" << num(oy + plot_h) << "\" text-anchor=\"end\">"
            << num(shape.inner.front(), 4) << "</text><text x=\"" << num(ox - 5) << "\" y=\"" << num(oy + 10)
            << "\" text-anchor=\"end\">" << num(shape.inner.back(), 4) << "</text>\n";
        out << "<text x=\"" << num(ox - 35) << "\" y=\"" << num(oy + plot_h / 2) << "\" text-anchor=\"middle\">"
            << escape(table.axis_names[1]) << "</text>\n";
        out << "<text x=\"" << num(ox) << "\" y=\"" << num(oy + plot_h + 52) << "\">min " << num(lo, 4) << "  max "
            << num(hi, 4) << "</text>\n</g>\n";
    }
    out << "</svg>\n";
}

/// Throws mixed_axis_shape if the rows are neither a 1-axis series nor a regular 2-axis grid.
inline void render_svg(const SweepTable& table, std::ostream& out) {
    const GridShape shape = grid_shape(table);
    if (table.measure_names.empty()) throw mixed_axis_shape("plot: table has no measure columns");
    if (shape.inner.empty()) {
        render_line_chart(table, shape, out);
    } else {
        render_heatmaps(table, shape, out);
    }
}

inline void render_svg(const SweepTable& table, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw error("cannot open '" + path + "' for writing");
    render_svg(table, file);
    file.flush();
    if (!file) throw error("write to '" + path + "' failed");
}

}  // namespace qdot
