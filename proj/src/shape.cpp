#include "vk/shape.hpp"

namespace vk {

ShapeParam shape_from_c(cplx c, Chart chart) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw DomainError("convex_geometry", "shape_from_c", "c must be finite");
  ShapeParam s;
  s.chart = chart;
  s.c = c;
  Mat2 m;
  if (chart == Chart::first)
    m << 2.0, 0.0, 2.0 * c.real(), -2.0 * c.imag();
  else
    m << 2.0 * c.real(), -2.0 * c.imag(), 2.0, 0.0;

  const Mat2 g = m * m.transpose();
  const double mean = 0.5 * (g(0, 0) + g(1, 1));
  const double dev = std::hypot(0.5 * (g(0, 0) - g(1, 1)), g(0, 1));
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  s.alpha = std::sqrt(mean + dev);
  s.beta = std::abs(det) / s.alpha;
  s.gamma = std::min(1.0, s.beta / s.alpha);
  double psi = dev > 1e-300 ? 0.5 * std::atan2(2.0 * g(0, 1), g(0, 0) - g(1, 1)) : 0.0;
  if (psi < 0.0) psi += kPi;
  if (psi >= kPi) psi -= kPi;
  s.psi = psi;

  // First row of V^T is M^T e_psi / alpha.
  const Vec2 epsi(std::cos(psi), std::sin(psi));
  const Vec2 v1 = m.transpose() * epsi;
  s.trace_phase = std::atan2(v1[1], v1[0]);
  s.trace_orientation = det < 0.0 ? -1 : 1;
  return s;
}

ShapeParam c_from_shape(double gamma, double psi, int orientation) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw DomainError("convex_geometry", "c_from_shape", "gamma must lie in [0,1]");
  const double sigma = orientation < 0 ? -1.0 : 1.0;
  const double cp = std::cos(psi), sp = std::sin(psi);
  const double g2 = gamma * gamma;
  const double den1 = cp * cp + g2 * sp * sp;
  const double den2 = sp * sp + g2 * cp * cp;
  const double off = cp * sp * (1.0 - g2);
  if (den2 <= kChartSwitch * kChartSwitch * den1) {
    const double a2 = 4.0 / den1;
    return shape_from_c(cplx(off / den1, -sigma * a2 * gamma / 4.0), Chart::first);
  }
  const double a2 = 4.0 / den2;
  return shape_from_c(cplx(off / den2, sigma * a2 * gamma / 4.0), Chart::second);
}

ChartChange chart_change(const ShapeParam& from) {
  const double r = std::abs(from.c);
  if (r == 0.0) throw DomainError("convex_geometry", "convert_chart", "c = 0 has no representation in the other chart");
  return {r, from.c / r};
}

ShapeParam convert_chart(const ShapeParam& s) {
  chart_change(s);
  return shape_from_c(1.0 / s.c, s.chart == Chart::first ? Chart::second : Chart::first);
}

ShapeParam canonical_chart(const ShapeParam& s) {
  const double r = std::abs(s.c);
  if (s.chart == Chart::first && r > kChartSwitch) return convert_chart(s);
  if (s.chart == Chart::second && r >= 1.0) return convert_chart(s);
  return s;
}

}  // namespace vk
