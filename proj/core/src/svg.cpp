#include "coarse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 40.0, kTop = 40.0, kBottom = 60.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct Cell {
    bool present = false;
    double value = 0.0;
};

Cell parse_cell(const std::string& text) {
    if (text.empty() || text == "NA") return {};
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) return {};
    return {true, v};
}

} // namespace

std::string csv_to_svg_chart(const std::string& csv_text) {
    std::vector<std::string> lines = split(csv_text, '\n');
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (std::string& l : lines)
        if (!l.empty() && l.back() == '\r') l.pop_back();

    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows; // parsed data cells, header width
    if (!lines.empty()) {
        headers = split(lines[0], ',');
        for (std::size_t r = 1; r < lines.size(); ++r) {
            if (lines[r].empty()) continue;
            std::vector<std::string> cells = split(lines[r], ',');
            if (cells.size() != headers.size())
                throw IoError("csv row " + std::to_string(r) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(headers.size()));
            std::vector<Cell> parsed(cells.size());
            for (std::size_t c = 0; c < cells.size(); ++c) parsed[c] = parse_cell(cells[c]);
            rows.push_back(std::move(parsed));
        }
    }

    const int series_count =
        headers.size() >= 2 ? static_cast<int>(headers.size()) - 1 : 0;

    // Data ranges over present cells only.
    bool any = false;
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    for (const auto& row : rows) {
        if (!row[0].present) continue;
        for (int s = 0; s < series_count; ++s) {
            if (!row[s + 1].present) continue;
            if (!any) {
                xmin = xmax = row[0].value;
                ymin = ymax = row[s + 1].value;
                any = true;
            } else {
                xmin = std::min(xmin, row[0].value);
                xmax = std::max(xmax, row[0].value);
                ymin = std::min(ymin, row[s + 1].value);
                ymax = std::max(ymax, row[s + 1].value);
            }
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * kPlotW; };
    auto py = [&](double y) { return kTop + kPlotH - (y - ymin) / (ymax - ymin) * kPlotH; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    svg += "<g font-family=\"monospace\" font-size=\"12\" fill=\"#000000\">\n";

    // Axes.
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop + kPlotH) + "\" x2=\"" +
           fmt(kLeft + kPlotW) + "\" y2=\"" + fmt(kTop + kPlotH) +
           "\" stroke=\"#000000\"/>\n";
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(kTop + kPlotH) + "\" stroke=\"#000000\"/>\n";

    // Ticks and grid labels.
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double gx = px(fx);
        svg += "<line x1=\"" + fmt(gx) + "\" y1=\"" + fmt(kTop + kPlotH) + "\" x2=\"" +
               fmt(gx) + "\" y2=\"" + fmt(kTop + kPlotH + 5.0) + "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + fmt(gx) + "\" y=\"" + fmt(kTop + kPlotH + 18.0) +
               "\" text-anchor=\"middle\">" + escape(fmt(fx)) + "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double gy = py(fy);
        svg += "<line x1=\"" + fmt(kLeft - 5.0) + "\" y1=\"" + fmt(gy) + "\" x2=\"" +
               fmt(kLeft) + "\" y2=\"" + fmt(gy) + "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 8.0) + "\" y=\"" + fmt(gy + 4.0) +
               "\" text-anchor=\"end\">" + escape(fmt(fy)) + "</text>\n";
    }

    // Axis titles from the header row.
    const std::string x_label = headers.empty() ? std::string("x") : headers[0];
    std::string y_label;
    for (int s = 0; s < series_count; ++s) {
        if (s) y_label += ", ";
        y_label += headers[s + 1];
    }
    svg += "<text x=\"" + fmt(kLeft + kPlotW / 2.0) + "\" y=\"" + fmt(kHeight - 15.0) +
           "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(kTop + kPlotH / 2.0) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fmt(kTop + kPlotH / 2.0) + ")\">" + escape(y_label) + "</text>\n";

    // Legend.
    for (int s = 0; s < series_count; ++s) {
        const double ly = kTop + 4.0 + 16.0 * s;
        const char* color = kPalette[s % kPaletteSize];
        svg += "<rect x=\"" + fmt(kLeft + kPlotW - 130.0) + "\" y=\"" + fmt(ly) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"" + fmt(kLeft + kPlotW - 115.0) + "\" y=\"" + fmt(ly + 9.0) +
               "\">" + escape(headers[s + 1]) + "</text>\n";
    }

    // Series: polyline segments broken at missing cells, plus point markers.
    for (int s = 0; s < series_count; ++s) {
        const char* color = kPalette[s % kPaletteSize];
        std::vector<std::pair<double, double>> segment;
        std::string shapes;
        auto flush = [&]() {
            if (segment.size() >= 2) {
                shapes += "<polyline fill=\"none\" stroke=\"";
                shapes += color;
                shapes += "\" stroke-width=\"1.5\" points=\"";
                for (std::size_t k = 0; k < segment.size(); ++k) {
                    if (k) shapes += ' ';
                    shapes += fmt(segment[k].first) + "," + fmt(segment[k].second);
                }
                shapes += "\"/>\n";
            }
            segment.clear();
        };
        for (const auto& row : rows) {
            if (!row[0].present || !row[s + 1].present) {
                flush();
                continue;
            }
            const double gx = px(row[0].value);
            const double gy = py(row[s + 1].value);
            segment.emplace_back(gx, gy);
            shapes += "<circle cx=\"" + fmt(gx) + "\" cy=\"" + fmt(gy) +
                      "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
        flush();
        svg += shapes;
    }

    svg += "</g>\n</svg>\n";
    return svg;
}

} // namespace coarse
