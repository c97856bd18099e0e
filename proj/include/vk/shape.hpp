// Shape parameter of a leaf: the direction c at infinity and its (gamma, psi) form.
#pragma once

#include "vk/types.hpp"

#include <utility>

namespace vk {

enum class Chart { first, second };

/// Leaf direction v = (1, c) in chart first, v = (c, 1) in chart second.
///
/// The reference ellipse is traced by theta -> M (cos theta, sin theta) with
/// M = [2 Re v, -2 Im v]. M = R(psi) diag(alpha, beta) V^T with alpha >= beta,
/// psi in [0, pi). The trace is ellipse_real_point(sigma (theta - phase)),
/// sigma = trace_orientation = sign det M.
struct ShapeParam {
  Chart chart = Chart::first;
  cplx c{};
  double gamma = 0.0;
  double psi = 0.0;
  double alpha = 2.0;
  double beta = 0.0;
  double trace_phase = 0.0;
  int trace_orientation = 1;

  /// (v1, v2), the unnormalized leaf coefficient.
  std::pair<cplx, cplx> direction() const {
    return chart == Chart::first ? std::pair{cplx(1.0), c} : std::pair{c, cplx(1.0)};
  }
};

/// Threshold on |c| beyond which the other chart is preferred.
inline constexpr double kChartSwitch = 10.0;

ShapeParam shape_from_c(cplx c, Chart chart = Chart::first);

/// Inverse of shape_from_c for the half-leaf with the given orientation (+1 or -1).
/// Picks chart second when |c| would exceed kChartSwitch in chart first.
ShapeParam c_from_shape(double gamma, double psi, int orientation = 1);

/// Same leaf expressed in the other chart: c' = 1/c, zeta' = zeta c/|c|.
/// Throws DomainError when c = 0 (the leaf is not visible in the other chart).
ShapeParam convert_chart(const ShapeParam& s);

/// Factor relating leaf coefficients: b' = scale * b * conj(phase), zeta' = zeta * phase.
struct ChartChange {
  double scale;
  cplx phase;
};
ChartChange chart_change(const ShapeParam& from);

/// Re-expresses s in chart first when |c| <= kChartSwitch there, otherwise chart second.
ShapeParam canonical_chart(const ShapeParam& s);

/// Support function of the reference ellipse (a = 0, rho = 1) in direction u.
inline double ellipse_support(const ShapeParam& s, const Vec2& u) {
  const double cp = std::cos(s.psi), sp = std::sin(s.psi);
  const double x = s.alpha * (u[0] * cp + u[1] * sp);
  const double y = s.beta * (-u[0] * sp + u[1] * cp);
  return std::sqrt(x * x + y * y);
}

}  // namespace vk
