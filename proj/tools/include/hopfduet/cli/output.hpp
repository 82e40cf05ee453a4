#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hopfduet::cli {

/// CSV writer with fixed %.12g float formatting and a leading comment line
/// carrying the config hash and schema version. Content is assembled in
/// memory and written atomically (whole file or nothing).
class CsvWriter {
 public:
  CsvWriter(std::string header, std::string hash, int schema_version = 1);
  void row(const std::vector<std::string>& cells);
  void numeric_row(const std::vector<double>& values);
  std::string cell(double v) const;  // %.12g
  void write(const std::filesystem::path& path) const;
  const std::string& text() const { return body_; }

 private:
  std::string body_;
};

std::string format_g12(double v);

/// Flat-colour region map with overlay polylines, written as a static SVG.
class SvgRegionPlot {
 public:
  SvgRegionPlot(double x_lo, double x_hi, double y_lo, double y_hi, int width = 640,
                int height = 480);
  /// One grid cell, colour chosen by class-set key.
  void cell(double x0, double x1, double y0, double y1, const std::string& key);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& colour);
  void marker(double x, double y, const std::string& colour);
  void write(const std::filesystem::path& path, const std::string& title) const;

 private:
  double x_lo_, x_hi_, y_lo_, y_hi_;
  int w_, h_;
  std::string cells_, lines_, markers_;
  double px(double x) const;
  double py(double y) const;
};

}  // namespace hopfduet::cli
