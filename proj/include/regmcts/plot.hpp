#pragma once

#include <string>

namespace regmcts {

// Renders an aggregated table as a standalone SVG. The table schema is
// sniffed from the header: a first column named "sim" yields a line chart
// with one polyline per *_mean series; a first column named "k" yields a
// color grid with one <rect class="cell"> per table cell. Output bytes are
// a pure function of the input table. Throws std::invalid_argument for an
// unknown schema or an empty table.
void render_plot(const std::string& table_csv_path,
                 const std::string& output_svg_path);

}  // namespace regmcts
