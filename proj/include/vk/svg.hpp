// Minimal SVG canvas in data coordinates and a marching-squares contour tracer.
#pragma once

#include "vk/types.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace vk {

class SvgPlot {
 public:
  SvgPlot(double width, double height, double xmin, double xmax, double ymin, double ymax);

  void polyline(const std::vector<Vec2>& pts, const std::string& stroke, double stroke_width = 1.0,
                bool closed = false, const std::string& fill = "none");
  void segment(const Vec2& p, const Vec2& q, const std::string& stroke, double stroke_width = 1.0);
  void rect(const Vec2& lo, const Vec2& hi, const std::string& fill);
  void circle(const Vec2& c, double radius_px, const std::string& fill);
  void text(const Vec2& at, const std::string& s, double size = 12.0);
  /// Frame and tick labels at the ends of both ranges.
  void frame(const std::string& xlabel, const std::string& ylabel);

  std::string str() const;

 private:
  Vec2 map(const Vec2& p) const;
  double w_, h_, x0_, x1_, y0_, y1_;
  double margin_ = 40.0;
  std::ostringstream body_;
};

/// Level-set segments of a field sampled on an nx x ny grid over [x0,x1] x [y0,y1]
/// (values row-major, index iy * nx + ix).
std::vector<std::pair<Vec2, Vec2>> contour_segments(const std::vector<double>& values, int nx, int ny, double x0,
                                                    double x1, double y0, double y1, double level);

}  // namespace vk
