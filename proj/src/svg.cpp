#include "dikin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dikin/errors.hpp"

namespace dikin::svg {

namespace {

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string scatter(const std::vector<std::pair<double, double>>& points,
                    const ScatterOptions& opts) {
  const double ml = 60, mr = 20, mt = opts.title.empty() ? 20 : 40, mb = 45;
  const double pw = opts.width - ml - mr;
  const double ph = opts.height - mt - mb;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (!points.empty()) {
    xmin = xmax = points[0].first;
    ymin = ymax = points[0].second;
    for (const auto& [x, y] : points) {
      if (std::isfinite(x)) { xmin = std::min(xmin, x); xmax = std::max(xmax, x); }
      if (std::isfinite(y)) { ymin = std::min(ymin, y); ymax = std::max(ymax, y); }
    }
  }
  if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }
  const double xpad = 0.04 * (xmax - xmin), ypad = 0.04 * (ymax - ymin);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
     << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width
     << " " << opts.height << "\">\n"
     << "<rect width=\"" << opts.width << "\" height=\"" << opts.height
     << "\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    os << "<text x=\"" << opts.width / 2
       << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">"
       << escape(opts.title) << "</text>\n";

  // Axes with five ticks per side.
  os << "<g stroke=\"#444\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
     << fmt(ml + pw) << "\" y2=\"" << fmt(mt + ph) << "\"/>\n"
     << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\""
     << fmt(ml) << "\" y2=\"" << fmt(mt + ph) << "\"/>\n</g>\n"
     << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 5.0;
    const double yv = ymin + (ymax - ymin) * k / 5.0;
    os << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(mt + ph + 16)
       << "\" text-anchor=\"middle\">" << fmt(xv, "%.4g") << "</text>\n";
    os << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(py(yv) + 4)
       << "\" text-anchor=\"end\">" << fmt(yv, "%.4g") << "</text>\n";
  }
  if (!opts.x_label.empty())
    os << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(mt + ph + 34)
       << "\" text-anchor=\"middle\">" << escape(opts.x_label) << "</text>\n";
  if (!opts.y_label.empty())
    os << "<text x=\"14\" y=\"" << fmt(mt + ph / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
       << fmt(mt + ph / 2) << ")\">" << escape(opts.y_label) << "</text>\n";
  os << "</g>\n<g fill=\"#1f5fbf\" fill-opacity=\"0.75\">\n";
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
       << "\" r=\"" << fmt(opts.marker_radius) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << content;
}

}  // namespace dikin::svg
