#include "kerrgcs/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kerrgcs::cli {

void Table::add_column(std::string name) { columns_.push_back(std::move(name)); }

void Table::add_complex_column(const std::string& name) {
  add_column(name + "_re");
  add_column(name + "_im");
}

void Table::new_row() {
  if (!rows_.empty() && rows_.back().size() != columns_.size()) {
    throw std::logic_error("Table: previous row is incomplete");
  }
  rows_.emplace_back();
  rows_.back().reserve(columns_.size());
}

void Table::push(Cell value) {
  if (rows_.empty() || rows_.back().size() >= columns_.size()) throw std::logic_error("Table: row overflow");
  rows_.back().push_back(std::move(value));
}

void Table::push_complex(cplx value) {
  push(value.real());
  push(value.imag());
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

namespace {

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return csv_field(std::get<std::string>(cell));
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table) {
  for (const auto& line : comments) out << "# " << line << '\n';
  const auto& cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << csv_field(cols[c]);
  out << '\n';
  for (const auto& row : table.rows()) {
    if (row.size() != cols.size()) throw std::logic_error("write_csv: incomplete row");
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
}

void write_svg_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series) {
  constexpr double width = 720, height = 440, left = 80, right = 170, top = 40, bottom = 60;
  constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << coord(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape_xml(title) << "</text>\n";
  out << "<rect x=\"" << coord(left) << "\" y=\"" << coord(top) << "\" width=\"" << coord(pw) << "\" height=\""
      << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
    out << "<line x1=\"" << coord(px(xv)) << "\" y1=\"" << coord(top + ph) << "\" x2=\"" << coord(px(xv))
        << "\" y2=\"" << coord(top + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << coord(px(xv)) << "\" y=\"" << coord(top + ph + 18) << "\" text-anchor=\"middle\">"
        << short_num(xv) << "</text>\n";
    out << "<line x1=\"" << coord(left - 5) << "\" y1=\"" << coord(py(yv)) << "\" x2=\"" << coord(left)
        << "\" y2=\"" << coord(py(yv)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << coord(left - 8) << "\" y=\"" << coord(py(yv) + 4) << "\" text-anchor=\"end\">"
        << short_num(yv) << "</text>\n";
  }
  out << "<text x=\"" << coord(left + pw / 2) << "\" y=\"" << coord(height - 15)
      << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << coord(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    const auto& ser = series[s];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"" << points
            << "\"/>\n";
      }
      points.clear();
    };
    for (std::size_t k = 0; k < std::min(ser.x.size(), ser.y.size()); ++k) {
      if (!std::isfinite(ser.x[k]) || !std::isfinite(ser.y[k])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += coord(px(ser.x[k])) + "," + coord(py(ser.y[k]));
    }
    flush();
    const double ly = top + 10 + 18.0 * s;
    out << "<line x1=\"" << coord(left + pw + 12) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(left + pw + 36)
        << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << coord(left + pw + 42) << "\" y=\"" << coord(ly + 4) << "\">" << escape_xml(ser.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

void write_pgm(std::ostream& out, std::size_t width, std::size_t height, const std::vector<double>& values,
               double lo, double hi) {
  if (values.size() != width * height) throw std::invalid_argument("write_pgm: size mismatch");
  if (!(hi > lo)) throw std::invalid_argument("write_pgm: empty value range");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  std::string bytes(values.size(), '\0');
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double t = std::clamp((values[k] - lo) / (hi - lo), 0.0, 1.0);
    bytes[k] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t)));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace kerrgcs::cli
