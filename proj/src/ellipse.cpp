#include "vk/ellipse.hpp"

namespace vk {

InscribedEllipse make_inscribed(const Vec2& a, double rho, const ShapeParam& shape) {
  InscribedEllipse e;
  e.a = a;
  e.rho = rho;
  e.shape = shape;
  auto [v1, v2] = shape.direction();
  e.b = {rho * v1, rho * v2};
  return e;
}

Vec2 ellipse_real_point(const InscribedEllipse& e, double theta) {
  const ShapeParam& s = e.shape;
  const double x = s.alpha * std::cos(theta), y = s.beta * std::sin(theta);
  const double cp = std::cos(s.psi), sp = std::sin(s.psi);
  return e.a + e.rho * Vec2(x * cp - y * sp, x * sp + y * cp);
}

ComplexPoint2 ellipse_complex_point(const InscribedEllipse& e, cplx zeta) {
  if (zeta == cplx(0.0)) throw DomainError("convex_geometry", "ellipse_complex_point", "zeta = 0");
  const cplx inv = 1.0 / zeta;
  return {e.a[0] + e.b.z1 * zeta + std::conj(e.b.z1) * inv, e.a[1] + e.b.z2 * zeta + std::conj(e.b.z2) * inv};
}

double ellipse_curvature(const InscribedEllipse& e, double theta) {
  const double al = e.shape.alpha, be = e.shape.beta;
  if (e.shape.gamma <= 0.0 || be <= 0.0)
    throw DomainError("convex_geometry", "ellipse_curvature", "degenerate ellipse (gamma = 0)");
  const double c = std::cos(theta), s = std::sin(theta);
  const double d = be * be * c * c + al * al * s * s;
  return al * be / (e.rho * d * std::sqrt(d));
}

double ellipse_angle_at_normal(const ShapeParam& s, const Vec2& u) {
  const double cp = std::cos(s.psi), sp = std::sin(s.psi);
  const double ux = u[0] * cp + u[1] * sp, uy = -u[0] * sp + u[1] * cp;
  return std::atan2(s.beta * uy, s.alpha * ux);
}

Vec2 ellipse_normal(const ShapeParam& s, double theta) {
  const Vec2 n(s.beta * std::cos(theta), s.alpha * std::sin(theta));
  const double cp = std::cos(s.psi), sp = std::sin(s.psi);
  return Vec2(n[0] * cp - n[1] * sp, n[0] * sp + n[1] * cp).normalized();
}

InscribedEllipse convert_chart(const InscribedEllipse& e) {
  const ChartChange ch = chart_change(e.shape);
  return make_inscribed(e.a, e.rho * ch.scale, convert_chart(e.shape));
}

}  // namespace vk
