#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qflat/errors.hpp"

namespace qflat::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                           "#ff7f0e", "#8c564b"};

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Tick step of the form {1,2,5} x 10^k giving 4..8 intervals.
inline double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace detail

/// Minimal multi-series line chart. Best-effort output; series are thinned
/// to at most ~1500 points each.
inline void write_line_chart(const std::filesystem::path& path, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             const std::vector<Series>& series) {
  const int width = 720, height = 480;
  const int left = 70, right = 160, top = 48, bottom = 56;
  const double pw = width - left - right, ph = height - top - bottom;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax - xmin <= 0) xmax = xmin + 1;
  if (ymax - ymin <= 0) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path.string());

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

  // axes
  out << "<g stroke=\"black\" stroke-width=\"1\">"
      << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
      << top + ph << "\"/>"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
      << "\"/></g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  const double xstep = detail::nice_step(xmax - xmin);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep; x += xstep) {
    out << "<line x1=\"" << detail::num(px(x)) << "\" y1=\"" << top + ph << "\" x2=\""
        << detail::num(px(x)) << "\" y2=\"" << top + ph + 4 << "\" stroke=\"black\"/>"
        << "<text x=\"" << detail::num(px(x)) << "\" y=\"" << top + ph + 18
        << "\" text-anchor=\"middle\">" << detail::num(x) << "</text>\n";
  }
  const double ystep = detail::nice_step(ymax - ymin);
  for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9 * ystep; y += ystep) {
    out << "<line x1=\"" << left - 4 << "\" y1=\"" << detail::num(py(y)) << "\" x2=\"" << left
        << "\" y2=\"" << detail::num(py(y)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << left - 8 << "\" y=\"" << detail::num(py(y) + 4)
        << "\" text-anchor=\"end\">" << detail::num(y) << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << top + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << top + ph / 2 << ")\">" << y_label << "</text>\n</g>\n";

  // series
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = detail::kPalette[si % 6];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    const std::size_t stride = std::max<std::size_t>(1, n / 1500);
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; i += stride)
      out << detail::num(px(s.x[i])) << ',' << detail::num(py(s.y[i])) << ' ';
    if (n > 0 && (n - 1) % stride != 0)
      out << detail::num(px(s.x[n - 1])) << ',' << detail::num(py(s.y[n - 1]));
    out << "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(si);
    out << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw Error("error writing " + path.string());
}

}  // namespace qflat::svg
