#include "qdo/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace qdo {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) { return format_number(v, 6); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi == lo) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace

std::string render_line_chart(const CsvTable& t, const std::string& x_column,
                              const std::vector<std::string>& y_columns,
                              const ChartOptions& opts) {
  const double left = 70, right = 150, top = 40, bottom = 50;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;

  const std::size_t xc = t.column(x_column);
  std::vector<std::size_t> ycs;
  for (const auto& name : y_columns) ycs.push_back(t.column(name));

  Range xr, yr;
  for (const auto& row : t.rows) {
    xr.include(row[xc]);
    for (auto c : ycs) yr.include(row[c]);
  }
  xr.finish();
  yr.finish();
  const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
     << opts.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    os << "<text x=\"" << num(left) << "\" y=\"24\" font-size=\"14\">" << escape(opts.title)
       << "</text>\n";

  // axes box, ticks at the ends and the middle
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
     << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    os << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(top + ph + 16)
       << "\" text-anchor=\"middle\">" << format_number(fx, 4) << "</text>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(fy) + 4)
       << "\" text-anchor=\"end\">" << format_number(fy, 4) << "</text>\n";
  }
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(opts.height - 10.0)
     << "\" text-anchor=\"middle\">" << escape(opts.x_label) << "</text>\n";
  if (yr.lo < 0.0 && yr.hi > 0.0)
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(left + pw)
       << "\" y2=\"" << num(py(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";

  for (std::size_t k = 0; k < ycs.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    std::string points;
    const auto flush = [&] {
      if (!points.empty())
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
           << points << "\"/>\n";
      points.clear();
    };
    for (const auto& row : t.rows) {
      const double x = row[xc], y = row[ycs[k]];
      if (!std::isfinite(x) || !std::isfinite(y)) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += num(px(x)) + "," + num(py(y));
    }
    flush();

    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << num(left + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
       << num(left + pw + 32) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(left + pw + 38) << "\" y=\"" << num(ly + 4) << "\">"
       << escape(y_columns[k]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qdo
