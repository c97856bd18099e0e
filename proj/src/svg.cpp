#include "vk/svg.hpp"

#include "vk/io.hpp"

namespace vk {

SvgPlot::SvgPlot(double width, double height, double xmin, double xmax, double ymin, double ymax)
    : w_(width), h_(height), x0_(xmin), x1_(xmax), y0_(ymin), y1_(ymax) {
  if (!(xmax > xmin && ymax > ymin)) throw ConfigError("cli", "plot", "empty plot range");
}

Vec2 SvgPlot::map(const Vec2& p) const {
  const double sx = (w_ - 2 * margin_) / (x1_ - x0_), sy = (h_ - 2 * margin_) / (y1_ - y0_);
  return {margin_ + (p[0] - x0_) * sx, h_ - margin_ - (p[1] - y0_) * sy};
}

void SvgPlot::polyline(const std::vector<Vec2>& pts, const std::string& stroke, double stroke_width, bool closed,
                       const std::string& fill) {
  if (pts.empty()) return;
  body_ << (closed ? "<polygon" : "<polyline") << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 q = map(pts[i]);
    body_ << (i ? " " : "") << format_number(q[0]) << ',' << format_number(q[1]);
  }
  body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << stroke_width << "\"/>\n";
}

void SvgPlot::segment(const Vec2& p, const Vec2& q, const std::string& stroke, double stroke_width) {
  const Vec2 a = map(p), b = map(q);
  body_ << "<line x1=\"" << format_number(a[0]) << "\" y1=\"" << format_number(a[1]) << "\" x2=\""
        << format_number(b[0]) << "\" y2=\"" << format_number(b[1]) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << stroke_width << "\"/>\n";
}

void SvgPlot::rect(const Vec2& lo, const Vec2& hi, const std::string& fill) {
  const Vec2 a = map(Vec2(lo[0], hi[1])), b = map(Vec2(hi[0], lo[1]));
  body_ << "<rect x=\"" << format_number(a[0]) << "\" y=\"" << format_number(a[1]) << "\" width=\""
        << format_number(b[0] - a[0]) << "\" height=\"" << format_number(b[1] - a[1]) << "\" fill=\"" << fill
        << "\"/>\n";
}

void SvgPlot::circle(const Vec2& c, double radius_px, const std::string& fill) {
  const Vec2 a = map(c);
  body_ << "<circle cx=\"" << format_number(a[0]) << "\" cy=\"" << format_number(a[1]) << "\" r=\"" << radius_px
        << "\" fill=\"" << fill << "\"/>\n";
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void SvgPlot::text(const Vec2& at, const std::string& s, double size) {
  const Vec2 a = map(at);
  body_ << "<text x=\"" << format_number(a[0]) << "\" y=\"" << format_number(a[1]) << "\" font-size=\"" << size
        << "\" font-family=\"sans-serif\">" << xml_escape(s) << "</text>\n";
}

void SvgPlot::frame(const std::string& xlabel, const std::string& ylabel) {
  polyline({{x0_, y0_}, {x1_, y0_}, {x1_, y1_}, {x0_, y1_}}, "#444", 1.0, true);
  const double dy = (y1_ - y0_) * 0.04;
  text({x0_, y0_ - dy}, format_number(x0_).substr(0, 6), 10);
  text({x1_, y0_ - dy}, format_number(x1_).substr(0, 6), 10);
  text({0.5 * (x0_ + x1_), y0_ - 1.8 * dy}, xlabel, 12);
  text({x0_, y1_ + dy}, ylabel, 12);
}

std::string SvgPlot::str() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_ << "\" viewBox=\"0 0 "
      << w_ << ' ' << h_ << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

std::vector<std::pair<Vec2, Vec2>> contour_segments(const std::vector<double>& values, int nx, int ny, double x0,
                                                    double x1, double y0, double y1, double level) {
  std::vector<std::pair<Vec2, Vec2>> out;
  const double dx = (x1 - x0) / (nx - 1), dy = (y1 - y0) / (ny - 1);
  const auto v = [&](int i, int j) { return values[static_cast<std::size_t>(j * nx + i)] - level; };
  const auto pt = [&](int i, int j) { return Vec2(x0 + i * dx, y0 + j * dy); };
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const int ci[4] = {i, i + 1, i + 1, i}, cj[4] = {j, j, j + 1, j + 1};
      std::vector<Vec2> cross;
      for (int e = 0; e < 4; ++e) {
        const double a = v(ci[e], cj[e]), b = v(ci[(e + 1) % 4], cj[(e + 1) % 4]);
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if ((a < 0.0) != (b < 0.0)) {
          const double t = a / (a - b);
          cross.push_back(pt(ci[e], cj[e]) + t * (pt(ci[(e + 1) % 4], cj[(e + 1) % 4]) - pt(ci[e], cj[e])));
        }
      }
      if (cross.size() >= 2) out.emplace_back(cross[0], cross[1]);
      if (cross.size() == 4) out.emplace_back(cross[2], cross[3]);
    }
  return out;
}

}  // namespace vk
