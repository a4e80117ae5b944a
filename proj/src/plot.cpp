#include "regmcts/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "regmcts/numeric_text.hpp"

namespace regmcts {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Table table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw std::invalid_argument("plot: table has no header");
  }
  table.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument("plot: ragged table row");
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.rows.empty()) {
    throw std::invalid_argument("plot: table has no data rows");
  }
  return table;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};

std::string lerp_color(double t) {
  // light blue-gray to dark blue
  const int r0 = 0xf7, g0 = 0xfb, b0 = 0xff;
  const int r1 = 0x08, g1 = 0x30, b1 = 0x6b;
  const int r = static_cast<int>(std::lround(r0 + t * (r1 - r0)));
  const int g = static_cast<int>(std::lround(g0 + t * (g1 - g0)));
  const int b = static_cast<int>(std::lround(b0 + t * (b1 - b0)));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

void render_trace_chart(const Table& table, std::ostream& out) {
  std::vector<std::size_t> series_cols;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name.size() > 5 && name.compare(name.size() - 5, 5, "_mean") == 0) {
      series_cols.push_back(c);
    }
  }
  if (series_cols.empty()) {
    throw std::invalid_argument("plot: trace table has no *_mean columns");
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& row : table.rows) {
    const double x = parse_double(row[0]);
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    for (std::size_t c : series_cols) {
      if (row[c].empty()) continue;
      const double y = parse_double(row[c]);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(y_min <= y_max)) {
    throw std::invalid_argument("plot: trace table has no values");
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  const double pad = (y_max - y_min) > 0 ? 0.05 * (y_max - y_min) : 1.0;
  y_min -= pad;
  y_max += pad;

  const double width = 860, height = 540;
  const double left = 70, right = 840, top = 20, bottom = 490;
  auto sx = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  };
  auto sy = [&](double y) {
    return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
      << fmt(right) << "\" y2=\"" << fmt(bottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\""
      << fmt(left) << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double fy = y_min + (y_max - y_min) * i / 4.0;
    out << "<text x=\"" << fmt(sx(fx)) << "\" y=\"" << fmt(bottom + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_value(fx)
        << "</text>\n";
    out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(sy(fy) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_value(fy)
        << "</text>\n";
  }

  for (std::size_t s = 0; s < series_cols.size(); ++s) {
    const std::size_t c = series_cols[s];
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& row : table.rows) {
      if (row[c].empty()) continue;
      if (!first) out << ' ';
      out << fmt(sx(parse_double(row[0]))) << ','
          << fmt(sy(parse_double(row[c])));
      first = false;
    }
    out << "\"/>\n";
    const std::string label =
        table.header[c].substr(0, table.header[c].size() - 5);
    out << "<text x=\"" << fmt(right - 150) << "\" y=\""
        << fmt(top + 16.0 * (s + 1)) << "\" font-size=\"13\" fill=\"" << color
        << "\">" << label << "</text>\n";
  }
  out << "</svg>\n";
}

void render_heatmap(const Table& table, std::ostream& out) {
  const std::size_t cols = table.header.size() - 1;
  if (cols == 0) {
    throw std::invalid_argument("plot: heatmap table has no value columns");
  }
  const std::size_t rows = table.rows.size();

  double v_min = std::numeric_limits<double>::infinity(), v_max = -v_min;
  for (const auto& row : table.rows) {
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c].empty()) continue;
      const double v = parse_double(row[c]);
      v_min = std::min(v_min, v);
      v_max = std::max(v_max, v);
    }
  }
  if (!(v_min <= v_max)) {
    throw std::invalid_argument("plot: heatmap table has no values");
  }
  const double range = v_max > v_min ? v_max - v_min : 1.0;

  const double cell_w = 84, cell_h = 46, left = 60, top = 40;
  const double width = left + cell_w * cols + 20;
  const double height = top + cell_h * rows + 20;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  for (std::size_t c = 0; c < cols; ++c) {
    out << "<text x=\"" << fmt(left + cell_w * (c + 0.5)) << "\" y=\""
        << fmt(top - 10) << "\" font-size=\"13\" text-anchor=\"middle\">d="
        << table.header[c + 1] << "</text>\n";
  }
  for (std::size_t r = 0; r < rows; ++r) {
    out << "<text x=\"" << fmt(left - 10) << "\" y=\""
        << fmt(top + cell_h * (r + 0.5) + 4)
        << "\" font-size=\"13\" text-anchor=\"end\">k=" << table.rows[r][0]
        << "</text>\n";
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string& cell = table.rows[r][c + 1];
      const double x = left + cell_w * c;
      const double y = top + cell_h * r;
      if (cell.empty()) {
        out << "<rect class=\"cell\" x=\"" << fmt(x) << "\" y=\"" << fmt(y)
            << "\" width=\"" << fmt(cell_w) << "\" height=\"" << fmt(cell_h)
            << "\" fill=\"#dddddd\"/>\n";
        continue;
      }
      const double v = parse_double(cell);
      const double t = (v - v_min) / range;
      out << "<rect class=\"cell\" x=\"" << fmt(x) << "\" y=\"" << fmt(y)
          << "\" width=\"" << fmt(cell_w) << "\" height=\"" << fmt(cell_h)
          << "\" fill=\"" << lerp_color(t) << "\"/>\n";
      out << "<text x=\"" << fmt(x + cell_w / 2) << "\" y=\""
          << fmt(y + cell_h / 2 + 4)
          << "\" font-size=\"12\" text-anchor=\"middle\" fill=\""
          << (t > 0.5 ? "white" : "black") << "\">" << fmt_value(v)
          << "</text>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace

void render_plot(const std::string& table_csv_path,
                 const std::string& output_svg_path) {
  const Table table = read_table(table_csv_path);
  std::ostringstream body;
  if (table.header.front() == "sim") {
    render_trace_chart(table, body);
  } else if (table.header.front() == "k") {
    render_heatmap(table, body);
  } else {
    throw std::invalid_argument("plot: unknown table schema (first column '" +
                                table.header.front() + "')");
  }
  std::ofstream out(output_svg_path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + output_svg_path);
  out << body.str();
  if (!out) throw std::runtime_error("failed writing " + output_svg_path);
}

}  // namespace regmcts
