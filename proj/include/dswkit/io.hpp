#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "dswkit/errors.hpp"

namespace dswkit {

/// Round-trip formatting used for every number written to disk.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Short label formatting for file names and tick labels.
inline std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch == '\n' ? ' ' : ch;
  }
  return q + "\"";
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw Error("cannot write '" + path + "'");
    row(header);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_field(fields[i]);
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> f;
    f.reserve(values.size());
    for (double v : values) f.push_back(format_number(v));
    row(f);
  }

 private:
  std::ofstream out_;
  std::string path_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  std::string color = "#1f4e9c";
};

struct PlotSpec {
  std::string title;
  std::string x_label = "x";
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 800;
  int height = 500;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string o;
  for (char ch : s) {
    switch (ch) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += ch;
    }
  }
  return o;
}

inline std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
    t.push_back(std::fabs(v) < 1e-12 * span ? 0.0 : v);
  }
  return t;
}

}  // namespace detail

/// Line plot with axes, ticks and a legend.
inline void write_svg(const std::string& path, const PlotSpec& spec) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < xmax)) { xmin = 0; xmax = 1; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double W = spec.width, H = spec.height;
  const double L = 70, R = 20, T = 40, B = 55;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ofstream o(path, std::ios::binary);
  if (!o) throw Error("cannot write '" + path + "'");
  char buf[128];
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
    << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << detail::xml_escape(spec.title) << "</text>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" ",
                L, T, W - L - R, H - T - B);
  o << buf << "fill=\"none\" stroke=\"black\"/>\n";
  for (double t : detail::nice_ticks(xmin, xmax)) {
    std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" ",
                  px(t), H - B, px(t), H - B + 5);
    o << buf << "stroke=\"black\"/>";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">", px(t),
                  H - B + 19);
    o << buf << format_short(t) << "</text>\n";
  }
  for (double t : detail::nice_ticks(ymin, ymax)) {
    std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" ",
                  L - 5, py(t), L, py(t));
    o << buf << "stroke=\"black\"/>";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">", L - 8,
                  py(t) + 4);
    o << buf << format_short(t) << "</text>\n";
  }
  o << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
    << detail::xml_escape(spec.x_label) << "</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" ", H / 2);
  o << buf << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << detail::xml_escape(spec.y_label)
    << "</text>\n";
  int k = 0;
  for (const auto& s : spec.series) {
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) o << " stroke-dasharray=\"6 4\"";
    o << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      o << buf;
    }
    o << "\"/>\n";
    const double ly = T + 16 + 18 * k++;
    std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" ",
                  W - R - 150, ly, W - R - 120, ly);
    o << buf << "stroke=\"" << s.color << "\" stroke-width=\"1.5\""
      << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\">", W - R - 114, ly + 4);
    o << buf << detail::xml_escape(s.label) << "</text>\n";
  }
  o << "</g>\n</svg>\n";
}

}  // namespace dswkit
