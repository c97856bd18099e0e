// Inscribed ellipses and their complexified leaves.
#pragma once

#include "vk/shape.hpp"

namespace vk {

/// Ellipse a + rho * M (cos theta, sin theta); complex leaf a + b zeta + conj(b) / zeta.
struct InscribedEllipse {
  Vec2 a = Vec2::Zero();
  double rho = 0.0;
  ShapeParam shape;
  ComplexPoint2 b;  // rho * direction()
};

InscribedEllipse make_inscribed(const Vec2& a, double rho, const ShapeParam& shape);

/// a + rho R(psi) (alpha cos theta, beta sin theta).
Vec2 ellipse_real_point(const InscribedEllipse& e, double theta);

/// a + b zeta + conj(b) / zeta. Throws DomainError at zeta = 0.
ComplexPoint2 ellipse_complex_point(const InscribedEllipse& e, cplx zeta);

/// Ellipse angle matching ellipse_complex_point(e, exp(i t)).
inline double trace_angle(const ShapeParam& s, double t) {
  return s.trace_orientation * (t - s.trace_phase);
}

/// Curvature of the real trace at ellipse angle theta. DomainError when gamma = 0.
double ellipse_curvature(const InscribedEllipse& e, double theta);

/// Ellipse angle of the trace point with outward normal u.
double ellipse_angle_at_normal(const ShapeParam& s, const Vec2& u);

/// Outward unit normal at ellipse angle theta.
Vec2 ellipse_normal(const ShapeParam& s, double theta);

inline ComplexPoint2 leaf_coefficient(const InscribedEllipse& e) { return e.b; }

/// Re-expresses the ellipse in the other chart (same real trace, rescaled rho).
InscribedEllipse convert_chart(const InscribedEllipse& e);

}  // namespace vk
