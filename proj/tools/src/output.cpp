#include "hopfduet/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

#include "hopfduet/errors.hpp"

namespace hopfduet::cli {

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string header, std::string hash, int schema_version) {
  body_ = "# hopfduet schema=" + std::to_string(schema_version) + " config=" + hash + "\n";
  body_ += header + "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

void CsvWriter::numeric_row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_g12(values[i]);
  }
  body_ += '\n';
}

std::string CsvWriter::cell(double v) const { return format_g12(v); }

void CsvWriter::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write output file: " + path.string());
  out << body_;
}

namespace {

std::string colour_for(const std::string& key) {
  // deterministic pastel palette keyed by the class-set label
  static const char* palette[] = {"#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f",
                                  "#cab2d6", "#ffff99", "#1f78b4", "#33a02c",
                                  "#e31a1c", "#ff7f00"};
  const size_t h = std::hash<std::string>{}(key);
  return palette[h % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace

SvgRegionPlot::SvgRegionPlot(double x_lo, double x_hi, double y_lo, double y_hi, int width,
                             int height)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), w_(width), h_(height) {}

double SvgRegionPlot::px(double x) const {
  return 60.0 + (x - x_lo_) / (x_hi_ - x_lo_) * (w_ - 80.0);
}

double SvgRegionPlot::py(double y) const {
  return (h_ - 40.0) - (y - y_lo_) / (y_hi_ - y_lo_) * (h_ - 70.0);
}

void SvgRegionPlot::cell(double x0, double x1, double y0, double y1,
                         const std::string& key) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<rect x='%.2f' y='%.2f' width='%.2f' height='%.2f' fill='%s'><title>%s"
                "</title></rect>\n",
                px(x0), py(y1), px(x1) - px(x0), py(y0) - py(y1), colour_for(key).c_str(),
                key.c_str());
  cells_ += buf;
}

void SvgRegionPlot::polyline(const std::vector<std::pair<double, double>>& pts,
                             const std::string& colour) {
  if (pts.empty()) return;
  std::string d = "<polyline fill='none' stroke='" + colour + "' stroke-width='1.5' points='";
  for (const auto& [x, y] : pts) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
    d += buf;
  }
  d += "'/>\n";
  lines_ += d;
}

void SvgRegionPlot::marker(double x, double y, const std::string& colour) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "<circle cx='%.2f' cy='%.2f' r='3' fill='%s'/>\n", px(x),
                py(y), colour.c_str());
  markers_ += buf;
}

void SvgRegionPlot::write(const std::filesystem::path& path,
                          const std::string& title) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write output file: " + path.string());
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w_ << "' height='" << h_
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n<text x='10' y='18' "
         "font-family='monospace' font-size='12'>"
      << title << "</text>\n";
  out << cells_ << lines_ << markers_;
  out << "</svg>\n";
}

}  // namespace hopfduet::cli
