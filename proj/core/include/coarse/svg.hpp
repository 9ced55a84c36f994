#pragma once

#include <string>

namespace coarse {

// Renders a CSV table as a self-contained 800x600 SVG line chart: column 0
// is the x axis, every further column is one series drawn in a fixed palette
// with point markers, axes are labeled from the CSV header row, and a legend
// names the series. "NA" cells are skipped (they break the polyline). An
// empty table yields an axes-only chart; a single data row yields markers
// without lines. Output bytes depend only on the input text.
std::string csv_to_svg_chart(const std::string& csv_text);

} // namespace coarse
