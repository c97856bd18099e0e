// Planar convex bodies described by support function, boundary and curvature.
#pragma once

#include "vk/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vk {

enum class BodyKind { disk, square, superellipse, polygon, stadium, custom };

std::string to_string(BodyKind kind);

/// Regularity of the boundary curve.
struct SmoothnessClass {
  enum class Kind { finite, infinite, analytic, piecewise };
  Kind kind = Kind::analytic;
  int order = 0;  // meaningful for Kind::finite
};

/// A segment of the boundary lying on a supporting line.
struct FlatFace {
  Vec2 p0;
  Vec2 p1;
};

/// Polymorphic backend; users go through ConvexBody.
class BodyImpl {
 public:
  virtual ~BodyImpl() = default;
  virtual double support(const Vec2& u) const = 0;
  virtual Vec2 support_point(const Vec2& u) const = 0;
  /// Curvature of the boundary at the point with outward normal u; nullopt at corners.
  virtual std::optional<double> curvature_at_normal(const Vec2& u) const = 0;
  /// Flat face with outward normal u (within angle tol), if any.
  virtual std::optional<FlatFace> flat_face(const Vec2& u, double tol) const = 0;
  virtual Vec2 boundary(double t) const = 0;
  virtual std::optional<double> curvature(double t) const = 0;
  virtual bool contains(const Vec2& x, double tol) const = 0;
  virtual bool has_flat_faces() const = 0;
  virtual SmoothnessClass smoothness() const = 0;
};

/// Immutable, cheaply copyable planar convex body.
///
/// support(u) = max_{x in K} x.u for unit u. Boundary parameter t ranges over
/// [0, 2pi) with a kind-specific parametrization (angle for the disk,
/// normalized arclength for polygons and the stadium).
class ConvexBody {
 public:
  /// Number of directions in the cached probe grid.
  static constexpr int kProbeCount = 4096;

  ConvexBody(BodyKind kind, std::string name, std::shared_ptr<const BodyImpl> impl);

  BodyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double support(const Vec2& u) const { return impl_->support(u); }
  double support_angle(double angle) const { return impl_->support(unit_vector(angle)); }
  /// Support value on the k-th of kProbeCount uniformly spaced directions.
  double probe_support(int k) const { return probe_[static_cast<std::size_t>(k)]; }

  Vec2 support_point(const Vec2& u) const { return impl_->support_point(u); }
  std::optional<double> curvature_at_normal(const Vec2& u) const {
    return impl_->curvature_at_normal(u);
  }
  std::optional<FlatFace> flat_face(const Vec2& u, double tol = 1e-6) const {
    return impl_->flat_face(u, tol);
  }
  Vec2 boundary(double t) const { return impl_->boundary(t); }
  std::optional<double> curvature(double t) const { return impl_->curvature(t); }
  bool contains(const Vec2& x, double tol = 1e-12) const { return impl_->contains(x, tol); }
  bool has_flat_faces() const { return impl_->has_flat_faces(); }
  SmoothnessClass smoothness() const { return impl_->smoothness(); }

  const std::shared_ptr<const BodyImpl>& impl() const { return impl_; }

 private:
  BodyKind kind_;
  std::string name_;
  std::shared_ptr<const BodyImpl> impl_;
  std::vector<double> probe_;
};

namespace detail {
const std::vector<Vec2>& make_probe_directions();
inline const std::vector<Vec2>& kProbeDirections = make_probe_directions();
}  // namespace detail

/// Table of the kProbeCount uniformly spaced unit directions.
inline const std::vector<Vec2>& probe_directions() { return detail::kProbeDirections; }

/// Direction of the k-th probe (angle 2 pi k / kProbeCount).
inline const Vec2& probe_direction(int k) { return probe_directions()[static_cast<std::size_t>(k)]; }

ConvexBody make_disk(double radius = 1.0);
/// The square [-h, h]^2.
ConvexBody make_square(double half_side = 1.0);
/// { |x|^{2n} + |y|^{2n} <= 1 }, n >= 1 (real n allowed).
ConvexBody make_superellipse(double n);
/// Convex polygon; vertices in counter-clockwise or clockwise order.
/// Throws ConfigError naming the violating triple for nonconvex input.
ConvexBody make_polygon(const std::vector<Vec2>& vertices);
/// Rectangle [-half_length, half_length] x [-radius, radius] capped by half disks.
ConvexBody make_stadium(double half_length = 2.0, double radius = 1.0);
/// Image L(K) of a body under the invertible affine map x -> A x + t.
ConvexBody make_affine(const ConvexBody& body, const Mat2& A, const Vec2& t);
/// Axis-aligned ellipse with semi-axes (ax, ay), rotated by angle.
ConvexBody make_ellipse(double ax, double ay, double angle = 0.0);

}  // namespace vk
