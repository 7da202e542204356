#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "kerrgcs/special.hpp"

namespace kerrgcs::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-oriented result table; complex columns become <name>_re, <name>_im.
class Table {
 public:
  void add_column(std::string name);
  void add_complex_column(const std::string& name);
  const std::vector<std::string>& columns() const noexcept { return columns_; }

  /// Starts a new row; fill it with push / push_complex in column order.
  void new_row();
  void push(Cell value);
  void push_complex(cplx value);
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// 17 significant digits ("%.17g"); nan/inf spelled "nan", "inf", "-inf".
std::string format_real(double value);
/// RFC-4180 quoting for fields containing ',', '"' or line breaks.
std::string csv_field(const std::string& text);

/// `#`-prefixed comment lines, header row, data rows, '\n' line endings.
void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal line plot: one polyline per series (broken at non-finite points),
/// axis box with five ticks per axis and a legend.
void write_svg_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series);

/// Binary 8-bit PGM (P5). values are row-major with the first row at the top;
/// [lo, hi] maps linearly onto 0..255 with clamping.
void write_pgm(std::ostream& out, std::size_t width, std::size_t height, const std::vector<double>& values,
               double lo, double hi);

}  // namespace kerrgcs::cli
