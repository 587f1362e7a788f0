#include <algorithm>
#include <cmath>
#include <sstream>

#include "bmc/cli.hpp"

namespace bmc::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

std::string num(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

void polyline(std::ostringstream& o, const Frame& fr, const std::vector<double>& xs,
              const std::vector<double>& ys, const std::string& style) {
  o << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    o << num(fr.px(xs[i])) << ',' << num(fr.py(ys[i])) << ' ';
  }
  o << "\"/>\n";
}

}  // namespace

std::string slopes_svg(const std::vector<SlopeCurve>& curves, const std::string& title) {
  Frame fr{0.0, 1.0, -1.2, 0.0};
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.mean.size(); ++i) {
      if (!std::isfinite(c.mean[i])) continue;
      fr.y0 = std::min(fr.y0, c.mean[i] - 2 * c.sd[i] - 0.05);
      fr.y1 = std::max(fr.y1, c.mean[i] + 2 * c.sd[i] + 0.05);
    }
  }

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n";

  const double bx = fr.px(fr.x0), by = fr.py(fr.y0);
  o << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << num(fr.px(fr.x1)) << "\" y2=\""
    << by << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << bx << "\" y2=\""
    << num(fr.py(fr.y1)) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    const double x = i / 10.0;
    o << "<text x=\"" << num(fr.px(x)) << "\" y=\"" << by + 16 << "\" text-anchor=\"middle\">"
      << num(x) << "</text>\n";
  }
  const double ystep = (fr.y1 - fr.y0) > 1.5 ? 0.5 : 0.2;
  for (double y = std::ceil(fr.y0 / ystep) * ystep; y <= fr.y1 + 1e-9; y += ystep) {
    o << "<text x=\"" << bx - 6 << "\" y=\"" << num(fr.py(y) + 4) << "\" text-anchor=\"end\">"
      << num(std::round(y * 100) / 100) << "</text>\n";
  }
  o << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
    << "\" text-anchor=\"middle\">alpha</text>\n";

  std::vector<double> grid, r1, r2;
  for (int i = 1; i < 200; ++i) {
    const double a = i / 200.0;
    grid.push_back(a);
    r1.push_back(h1(a));
    r2.push_back(h2(a));
  }
  polyline(o, fr, grid, r1, "stroke=\"red\" stroke-width=\"1.5\"");
  polyline(o, fr, grid, r2, "stroke=\"blue\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");

  for (const auto& c : curves) {
    std::vector<double> lo, hi;
    for (std::size_t i = 0; i < c.mean.size(); ++i) {
      lo.push_back(c.mean[i] - 2 * c.sd[i]);
      hi.push_back(c.mean[i] + 2 * c.sd[i]);
    }
    polyline(o, fr, c.alpha, lo, "stroke=\"gray\" stroke-dasharray=\"2,2\"");
    polyline(o, fr, c.alpha, hi, "stroke=\"gray\" stroke-dasharray=\"2,2\"");
    polyline(o, fr, c.alpha, c.mean, "stroke=\"black\" stroke-width=\"2\"");
    for (std::size_t i = 0; i < c.alpha.size(); ++i) {
      if (!std::isfinite(c.mean[i])) continue;
      o << "<circle cx=\"" << num(fr.px(c.alpha[i])) << "\" cy=\"" << num(fr.py(c.mean[i]))
        << "\" r=\"2.5\"/>\n";
    }
  }

  double ly = kTop + 8;
  auto legend = [&](const std::string& style, const std::string& text) {
    o << "<line x1=\"" << kLeft + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + 40 << "\" y2=\""
      << ly << "\" " << style << "/>\n";
    o << "<text x=\"" << kLeft + 46 << "\" y=\"" << ly + 4 << "\">" << text << "</text>\n";
    ly += 16;
  };
  for (const auto& c : curves) legend("stroke=\"black\" stroke-width=\"2\"", "slope, f = " + c.label);
  legend("stroke=\"red\" stroke-width=\"1.5\"", "h1");
  legend("stroke=\"blue\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"", "h2");
  o << "</svg>\n";
  return o.str();
}

}  // namespace bmc::cli
