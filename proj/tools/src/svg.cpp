#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace fluxmodes::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* dash_for(NormClass c) {
  switch (c) {
    case NormClass::Regular: return "";
    case NormClass::Section: return "";
    case NormClass::SingularNormalizable: return "8,5";
    case NormClass::NonNormalizable: return "2,5";
  }
  return "";
}

const char* color_for(int m) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[((m % 8) + 8) % 8];
}

}  // namespace

std::string towers_svg(const std::vector<TowerPoint>& points) {
  double qlo = 1e300, qhi = -1e300, glo = 1e300, ghi = -1e300;
  for (const TowerPoint& p : points) {
    qlo = std::min(qlo, p.q);
    qhi = std::max(qhi, p.q);
    glo = std::min(glo, p.gamma);
    ghi = std::max(ghi, p.gamma);
  }
  if (points.empty()) {
    qlo = 0.0; qhi = 1.0; glo = -1.0; ghi = 1.0;
  }
  if (qhi - qlo < 1e-12) qhi = qlo + 1.0;
  if (ghi - glo < 1e-12) ghi = glo + 1.0;
  auto xm = [&](double q) {
    return kMargin + (q - qlo) / (qhi - qlo) * (kWidth - 2.0 * kMargin);
  };
  auto ym = [&](double g) {
    return kHeight - kMargin - (g - glo) / (ghi - glo) * (kHeight - 2.0 * kMargin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes, a faint gamma = 0 guide, and tick labels.
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  if (glo < 0.0 && ghi > 0.0) {
    svg << "<line x1=\"" << kMargin << "\" y1=\"" << ym(0.0) << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << ym(0.0)
        << "\" stroke=\"#bbbbbb\" stroke-width=\"0.7\"/>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double q = qlo + (qhi - qlo) * i / 4.0;
    const double g = glo + (ghi - glo) * i / 4.0;
    svg << "<text x=\"" << xm(q) << "\" y=\"" << kHeight - kMargin + 18.0
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(q) << "</text>\n";
    svg << "<text x=\"" << kMargin - 8.0 << "\" y=\"" << ym(g) + 4.0
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(g) << "</text>\n";
  }
  svg << "<text x=\"" << kWidth / 2.0 << "\" y=\"" << kHeight - 14.0
      << "\" font-size=\"13\" text-anchor=\"middle\">q</text>\n";
  svg << "<text x=\"16\" y=\"" << kHeight / 2.0
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kHeight / 2.0 << ")\">gamma</text>\n";

  // One polyline per run of constant class within each (m, family) line.
  std::map<std::pair<int, int>, std::vector<TowerPoint>> lines;
  for (const TowerPoint& p : points)
    lines[{p.m, p.family == Family::Plain ? 0 : 1}].push_back(p);
  for (auto& [key, pts] : lines) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const TowerPoint& a, const TowerPoint& b) { return a.q < b.q; });
    size_t i = 0;
    while (i < pts.size()) {
      size_t j = i;
      while (j + 1 < pts.size() && pts[j + 1].norm_class == pts[i].norm_class) ++j;
      svg << "<polyline fill=\"none\" stroke=\"" << color_for(key.first)
          << "\" stroke-width=\"1.6\"";
      const char* dash = dash_for(pts[i].norm_class);
      if (dash[0]) svg << " stroke-dasharray=\"" << dash << "\"";
      svg << " points=\"";
      const size_t start = (i > 0) ? i - 1 : i;  // join adjacent runs
      for (size_t k = start; k <= j; ++k)
        svg << fmt(xm(pts[k].q)) << "," << fmt(ym(pts[k].gamma)) << " ";
      svg << "\"/>\n";
      i = j + 1;
    }
  }

  const double lx = kWidth - kMargin - 260.0, ly = kMargin - 30.0;
  struct LegendRow {
    const char* label;
    const char* dash;
  };
  const LegendRow rows[] = {{"regular", ""},
                            {"singular, square integrable", "8,5"},
                            {"not normalizable", "2,5"}};
  svg << "<rect x=\"" << lx - 10 << "\" y=\"" << ly - 14 << "\" width=\"280\" "
      << "height=\"56\" fill=\"white\" stroke=\"#888888\"/>\n";
  for (int r = 0; r < 3; ++r) {
    const double y = ly + r * 16.0;
    svg << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 44
        << "\" y2=\"" << y << "\" stroke=\"black\" stroke-width=\"1.6\"";
    if (rows[r].dash[0]) svg << " stroke-dasharray=\"" << rows[r].dash << "\"";
    svg << "/>\n";
    svg << "<text x=\"" << lx + 52 << "\" y=\"" << y + 4 << "\" font-size=\"12\">"
        << rows[r].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fluxmodes::cli
