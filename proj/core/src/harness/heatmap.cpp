#include "lpstruct/harness/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lpstruct::harness {

namespace {

using Rgb = std::array<double, 3>;

// ColorBrewer RdBu end points and midpoint.
constexpr Rgb kRed{178, 24, 43};
constexpr Rgb kMid{247, 247, 247};
constexpr Rgb kBlue{33, 102, 172};

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c[0])),
                static_cast<int>(std::lround(c[1])), static_cast<int>(std::lround(c[2])));
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

std::string short_label(const std::string& label) {
  const auto colon = label.find(':');
  return colon == std::string::npos ? label : label.substr(colon + 1);
}

}  // namespace

std::string heat_colour(double v, double scale) {
  if (v == 0.0 || !(scale > 0.0)) return kNeutralColour;
  // Keep the faintest nonzero cell visibly tinted.
  const double t = 0.15 + 0.85 * std::min(1.0, std::abs(v) / scale);
  const Rgb& end = v < 0 ? kRed : kBlue;
  Rgb c;
  for (int i = 0; i < 3; ++i) c[i] = kMid[i] + t * (end[i] - kMid[i]);
  return hex(c);
}

std::string render_heatmap(const structure::WeightedDag& dag, const std::string& title) {
  const std::size_t d = dag.w.rows();
  const int cell = 44;
  const int left = 120;
  const int top = 110 + (title.empty() ? 0 : 20);
  const int width = left + static_cast<int>(d) * cell + 20;
  const int height = top + static_cast<int>(d) * cell + 20;
  const double scale = max_abs(dag.w);
  const bool annotate = d <= 12;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) svg << "<text x=\"10\" y=\"18\" font-size=\"13\">" << escape(title) << "</text>\n";
  for (std::size_t j = 0; j < d; ++j) {
    const int x = left + static_cast<int>(j) * cell + cell / 2;
    svg << "<text x=\"" << x << "\" y=\"" << top - 6 << "\" transform=\"rotate(-60 " << x << ' ' << top - 6
        << ")\">" << escape(short_label(dag.labels[j])) << "</text>\n";
  }
  char value[32];
  for (std::size_t i = 0; i < d; ++i) {
    const int y = top + static_cast<int>(i) * cell;
    svg << "<text x=\"" << left - 6 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"end\">"
        << escape(short_label(dag.labels[i])) << "</text>\n";
    for (std::size_t j = 0; j < d; ++j) {
      const int x = left + static_cast<int>(j) * cell;
      const double v = dag.w(i, j);
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"" << heat_colour(v, scale) << "\" stroke=\"#bdbdbd\"/>\n";
      if (annotate && v != 0.0) {
        std::snprintf(value, sizeof value, "%.2f", v);
        svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"middle\">" << value
            << "</text>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lpstruct::harness
