// Robin function, indicatrix, Robin exponential map and Monge-Ampere masses.
#pragma once

#include "vk/leaf_eval.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vk {

using PlaneFn = std::function<double(const Vec2&)>;

struct RobinSample {
  ShapeParam shape;
  double theta = 0.0;
  ComplexPoint2 b;               // leaf coefficient
  ComplexPoint2 boundary_point;  // e^{i theta} b, on the indicatrix boundary
  Vec2 image = Vec2::Zero();     // a + e^{i theta} b + conj(e^{i theta} b), a point of K
  double weight = 0.0;
};

/// rho_K(w) read off the leaf with direction w: log|w_k| - log|b_k|.
double robin_value(const ExtremalCache& leaves, const ComplexPoint2& w);

/// V(lambda z) - log lambda on the schedule, extrapolated to lambda = infinity.
double robin_limit(const ExtremalCache& leaves, const ComplexPoint2& z,
                   const std::vector<double>& lambdas = {1e2, 1e3, 1e4});

/// Leaf coefficient b of the extremal with this shape; rho_K(b) = 0.
ComplexPoint2 robin_leafwise(const ConvexBody& body, const ShapeParam& shape);

/// a + b zeta + conj(b) / zeta for b on the indicatrix boundary, |zeta| >= 1.
ComplexPoint2 robin_exp_map(const ExtremalCache& leaves, const ComplexPoint2& b, cplx zeta);

/// Extremal leaves over the sphere of leaf directions, c = tan(t/2) e^{i p}.
/// Rows t_i = (i + 1/2) pi / n, columns p_j = 2 pi j / n. Leaf coefficients use
/// the normalization b_1 >= 0, extended continuously to c = infinity.
struct LeafSphere {
  int n = 0;
  std::vector<InscribedEllipse> leaves;
  std::vector<Vec2> a;
  std::vector<ComplexPoint2> b;
  std::vector<char> ok;
  int dropped = 0;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * n + j); }
  double row_angle(int i) const { return (i + 0.5) * kPi / n; }
  double col_angle(int j) const { return kTwoPi * j / n; }
};

LeafSphere build_leaf_sphere(const ConvexBody& body, int n, Exec exec = Exec::parallel);

struct BoundaryMeasure {
  LeafSphere sphere;
  int theta_samples = 64;
  std::vector<double> weights;  // per node, integrated over theta
  double total = 0.0;
  double min_weight = 0.0;

  /// Expanded (node, theta) samples; weights split evenly over theta.
  std::vector<RobinSample> samples() const;
  /// Sum of weight * phi(image).
  double integrate(const PlaneFn& phi) const;
};

/// Surface measure d^c rho ^ dd^c rho on the indicatrix boundary, resolution^2 shape nodes.
BoundaryMeasure ma_boundary_measure(const ConvexBody& body, int resolution, int theta_samples = 64,
                                    Exec exec = Exec::parallel);
BoundaryMeasure ma_boundary_measure(LeafSphere sphere, int theta_samples = 64);

/// Flux of psi d^cV ^ dd^cV through {V = log lambda}, psi(F(zeta)) = phi(F(zeta / |zeta|)).
double levelset_flux(const LeafSphere& sphere, const PlaneFn& phi, double lambda, int theta_samples = 64,
                     Exec exec = Exec::parallel);
double levelset_flux(const ConvexBody& body, const PlaneFn& phi, double lambda, int resolution,
                     int theta_samples = 64, Exec exec = Exec::parallel);

struct PushforwardResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_gap = 0.0;
  double mass = 0.0;
};

PushforwardResult pushforward_integral(const ConvexBody& body, const PlaneFn& phi, int resolution,
                                       double lambda = 1.05, int theta_samples = 64, Exec exec = Exec::parallel);

/// Test functions by name: 1, x, y, x2, y2, xy, x2+y2.
PlaneFn named_test_function(const std::string& name);

/// Equilibrium density of the real unit disk from the local cone of V_disk:
/// twice the area of the polar of y -> lim V(x + i s y) / s.
double disk_ma_density(const Vec2& x, double step = 1e-3, int directions = 256);
/// Integral of phi against disk_ma_density over the unit disk (polar grid, n x n).
double disk_ma_integral(const PlaneFn& phi, int n);

/// Samples e^{i theta} b of the indicatrix boundary on a resolution^2 shape grid.
std::vector<RobinSample> indicatrix(const ConvexBody& body, int resolution, int theta_samples,
                                    Exec exec = Exec::parallel);

}  // namespace vk
