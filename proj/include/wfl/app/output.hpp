#ifndef WFL_APP_OUTPUT_HPP
#define WFL_APP_OUTPUT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wfl::app {

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);
double parse_double(const std::string& text);

/// A CSV file held as strings. Numeric cells use format_double, so writing
/// and re-reading a table is lossless.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  const std::string& cell(std::size_t row, const std::string& name) const;
  std::vector<double> numbers(const std::string& name) const;

  void add_row(std::vector<std::string> row);
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

/// Shaded region between two curves sampled at the same abscissae.
struct PlotBand {
  std::string label;
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
  std::string color = "#cccccc";
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotBand> bands;
  std::vector<PlotSeries> series;
};

std::string render_svg(const PlotSpec& plot);
void write_svg(const std::filesystem::path& path, const PlotSpec& plot);

}  // namespace wfl::app

#endif
