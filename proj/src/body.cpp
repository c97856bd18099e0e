#include "vk/body.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <sstream>

namespace vk {

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::disk: return "disk";
    case BodyKind::square: return "square";
    case BodyKind::superellipse: return "superellipse";
    case BodyKind::polygon: return "polygon";
    case BodyKind::stadium: return "stadium";
    case BodyKind::custom: return "custom";
  }
  return "custom";
}

const std::vector<Vec2>& detail::make_probe_directions() {
  static const std::vector<Vec2> table = [] {
    std::vector<Vec2> t(ConvexBody::kProbeCount);
    for (int k = 0; k < ConvexBody::kProbeCount; ++k)
      t[static_cast<std::size_t>(k)] = unit_vector(kTwoPi * k / ConvexBody::kProbeCount);
    return t;
  }();
  return table;
}

ConvexBody::ConvexBody(BodyKind kind, std::string name, std::shared_ptr<const BodyImpl> impl)
    : kind_(kind), name_(std::move(name)), impl_(std::move(impl)) {
  probe_.resize(kProbeCount);
  const auto& dirs = detail::make_probe_directions();
  for (int k = 0; k < kProbeCount; ++k) probe_[static_cast<std::size_t>(k)] = impl_->support(dirs[static_cast<std::size_t>(k)]);
}

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

class DiskImpl final : public BodyImpl {
 public:
  explicit DiskImpl(double r) : r_(r) {}
  double support(const Vec2& u) const override { return r_ * u.norm(); }
  Vec2 support_point(const Vec2& u) const override { return r_ * u.normalized(); }
  std::optional<double> curvature_at_normal(const Vec2&) const override { return 1.0 / r_; }
  std::optional<FlatFace> flat_face(const Vec2&, double) const override { return std::nullopt; }
  Vec2 boundary(double t) const override { return r_ * unit_vector(t); }
  std::optional<double> curvature(double) const override { return 1.0 / r_; }
  bool contains(const Vec2& x, double tol) const override { return x.norm() <= r_ + tol; }
  bool has_flat_faces() const override { return false; }
  SmoothnessClass smoothness() const override { return {SmoothnessClass::Kind::analytic, 0}; }

 private:
  double r_;
};

// Vertices stored counter-clockwise.
class PolygonImpl final : public BodyImpl {
 public:
  explicit PolygonImpl(std::vector<Vec2> v) : v_(std::move(v)) {
    const std::size_t n = v_.size();
    cum_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = v_[(i + 1) % n] - v_[i];
      normals_.push_back(Vec2(e[1], -e[0]).normalized());
      cum_[i + 1] = cum_[i] + e.norm();
    }
  }

  double support(const Vec2& u) const override {
    double m = v_[0].dot(u);
    for (const auto& p : v_) m = std::max(m, p.dot(u));
    return m;
  }

  Vec2 support_point(const Vec2& u) const override {
    const double h = support(u);
    const double scale = 1e-13 * (1.0 + std::abs(h));
    Vec2 sum = Vec2::Zero();
    int cnt = 0;
    for (const auto& p : v_) {
      if (p.dot(u) >= h - scale) {
        sum += p;
        ++cnt;
      }
    }
    return sum / cnt;
  }

  std::optional<double> curvature_at_normal(const Vec2& u) const override {
    if (edge_for_normal(u, 1e-9)) return 0.0;
    return std::nullopt;
  }

  std::optional<FlatFace> flat_face(const Vec2& u, double tol) const override {
    if (auto i = edge_for_normal(u, tol)) return FlatFace{v_[*i], v_[(*i + 1) % v_.size()]};
    return std::nullopt;
  }

  Vec2 boundary(double t) const override {
    const double s = wrap_angle(t) / kTwoPi * cum_.back();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cum_.begin() - 1));
    i = std::min(i, v_.size() - 1);
    const double len = cum_[i + 1] - cum_[i];
    const double f = len > 0.0 ? (s - cum_[i]) / len : 0.0;
    return v_[i] + f * (v_[(i + 1) % v_.size()] - v_[i]);
  }

  std::optional<double> curvature(double t) const override {
    const double s = wrap_angle(t) / kTwoPi * cum_.back();
    const double eps = 1e-12 * cum_.back();
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (std::abs(s - cum_[i]) <= eps || std::abs(s - cum_.back()) <= eps) return std::nullopt;
    }
    return 0.0;
  }

  bool contains(const Vec2& x, double tol) const override {
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if ((x - v_[i]).dot(normals_[i]) > tol) return false;
    }
    return true;
  }

  bool has_flat_faces() const override { return true; }
  SmoothnessClass smoothness() const override { return {SmoothnessClass::Kind::piecewise, 0}; }

 private:
  std::optional<std::size_t> edge_for_normal(const Vec2& u, double tol) const {
    const Vec2 w = u.normalized();
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      if (std::abs(cross(normals_[i], w)) <= tol && normals_[i].dot(w) > 0.0) return i;
    }
    return std::nullopt;
  }

  std::vector<Vec2> v_;
  std::vector<Vec2> normals_;
  std::vector<double> cum_;
};

class SuperellipseImpl final : public BodyImpl {
 public:
  explicit SuperellipseImpl(double n) : n_(n), p_(2.0 * n), q_(p_ / (p_ - 1.0)) {}

  // Dual norm of the l^p ball.
  double support(const Vec2& u) const override {
    return std::pow(std::pow(std::abs(u[0]), q_) + std::pow(std::abs(u[1]), q_), 1.0 / q_);
  }

  Vec2 support_point(const Vec2& u) const override {
    const double h = support(u);
    if (h == 0.0) return Vec2::Zero();
    return {sgn(u[0]) * std::pow(std::abs(u[0]) / h, q_ - 1.0),
            sgn(u[1]) * std::pow(std::abs(u[1]) / h, q_ - 1.0)};
  }

  std::optional<double> curvature_at_normal(const Vec2& u) const override {
    return curvature_at_point(support_point(u));
  }
  std::optional<FlatFace> flat_face(const Vec2&, double) const override { return std::nullopt; }

  Vec2 boundary(double t) const override {
    const double c = std::cos(t), s = std::sin(t);
    return {sgn(c) * std::pow(std::abs(c), 2.0 / p_), sgn(s) * std::pow(std::abs(s), 2.0 / p_)};
  }
  std::optional<double> curvature(double t) const override { return curvature_at_point(boundary(t)); }

  bool contains(const Vec2& x, double tol) const override {
    return std::pow(std::abs(x[0]), p_) + std::pow(std::abs(x[1]), p_) <= 1.0 + tol;
  }
  bool has_flat_faces() const override { return false; }
  SmoothnessClass smoothness() const override {
    if (n_ == std::floor(n_)) return {SmoothnessClass::Kind::analytic, 0};
    return {SmoothnessClass::Kind::finite, static_cast<int>(std::floor(p_))};
  }

 private:
  double curvature_at_point(const Vec2& x) const {
    const double ax = std::abs(x[0]), ay = std::abs(x[1]);
    const double fx = p_ * std::pow(ax, p_ - 1.0);
    const double fy = p_ * std::pow(ay, p_ - 1.0);
    const double fxx = p_ * (p_ - 1.0) * std::pow(ax, p_ - 2.0);
    const double fyy = p_ * (p_ - 1.0) * std::pow(ay, p_ - 2.0);
    const double g = std::hypot(fx, fy);
    return (fxx * fy * fy + fyy * fx * fx) / (g * g * g);
  }

  double n_, p_, q_;
};

class StadiumImpl final : public BodyImpl {
 public:
  StadiumImpl(double l, double r) : l_(l), r_(r), perim_(4.0 * l + kTwoPi * r) {}

  double support(const Vec2& u) const override { return l_ * std::abs(u[0]) + r_ * u.norm(); }

  Vec2 support_point(const Vec2& u) const override {
    const Vec2 w = u.normalized();
    return Vec2(l_ * sgn(w[0]), 0.0) + r_ * w;
  }

  std::optional<double> curvature_at_normal(const Vec2& u) const override {
    if (std::abs(u.normalized()[0]) <= 1e-9) return 0.0;
    return 1.0 / r_;
  }

  std::optional<FlatFace> flat_face(const Vec2& u, double tol) const override {
    const Vec2 w = u.normalized();
    if (std::abs(w[0]) > tol) return std::nullopt;
    const double y = w[1] > 0.0 ? r_ : -r_;
    return FlatFace{Vec2(-l_, y), Vec2(l_, y)};
  }

  // Arclength parameter starting at (l, -r) going counter-clockwise.
  Vec2 boundary(double t) const override {
    double s = wrap_angle(t) / kTwoPi * perim_;
    const double arc = kPi * r_;
    if (s < arc) return Vec2(l_, 0.0) + r_ * unit_vector(-kPi / 2 + s / r_);
    s -= arc;
    if (s < 2.0 * l_) return {l_ - s, r_};
    s -= 2.0 * l_;
    if (s < arc) return Vec2(-l_, 0.0) + r_ * unit_vector(kPi / 2 + s / r_);
    s -= arc;
    return {-l_ + s, -r_};
  }

  std::optional<double> curvature(double t) const override {
    const double s = wrap_angle(t) / kTwoPi * perim_;
    const double arc = kPi * r_;
    if (s < arc || (s >= arc + 2.0 * l_ && s < 2.0 * arc + 2.0 * l_)) return 1.0 / r_;
    return 0.0;
  }

  bool contains(const Vec2& x, double tol) const override {
    const double cx = std::clamp(x[0], -l_, l_);
    return std::hypot(x[0] - cx, x[1]) <= r_ + tol;
  }
  bool has_flat_faces() const override { return true; }
  SmoothnessClass smoothness() const override { return {SmoothnessClass::Kind::finite, 1}; }

 private:
  double l_, r_, perim_;
};

class AffineImpl final : public BodyImpl {
 public:
  AffineImpl(ConvexBody base, const Mat2& a, const Vec2& t)
      : base_(std::move(base)), a_(a), ainv_(a.inverse()), t_(t), det_(std::abs(a.determinant())) {}

  double support(const Vec2& u) const override {
    const Vec2 w = a_.transpose() * u;
    const double s = w.norm();
    return s * base_.support(w / s) + t_.dot(u);
  }

  Vec2 support_point(const Vec2& u) const override {
    return a_ * base_.support_point((a_.transpose() * u).normalized()) + t_;
  }

  std::optional<double> curvature_at_normal(const Vec2& u) const override {
    const Vec2 w = (a_.transpose() * u).normalized();
    auto k = base_.curvature_at_normal(w);
    if (!k) return std::nullopt;
    const double at = (a_ * perp(w)).norm();
    return *k * det_ / (at * at * at);
  }

  std::optional<FlatFace> flat_face(const Vec2& u, double tol) const override {
    auto f = base_.flat_face((a_.transpose() * u).normalized(), tol);
    if (!f) return std::nullopt;
    return FlatFace{a_ * f->p0 + t_, a_ * f->p1 + t_};
  }

  Vec2 boundary(double t) const override { return a_ * base_.boundary(t) + t_; }

  std::optional<double> curvature(double t) const override {
    auto k = base_.curvature(t);
    if (!k) return std::nullopt;
    const double h = 1e-6;
    const Vec2 tan = (base_.boundary(t + h) - base_.boundary(t - h)).normalized();
    const double at = (a_ * tan).norm();
    return *k * det_ / (at * at * at);
  }

  bool contains(const Vec2& x, double tol) const override {
    return base_.contains(ainv_ * (x - t_), tol * ainv_.norm());
  }
  bool has_flat_faces() const override { return base_.has_flat_faces(); }
  SmoothnessClass smoothness() const override { return base_.smoothness(); }

 private:
  ConvexBody base_;
  Mat2 a_, ainv_;
  Vec2 t_;
  double det_;
};

std::vector<Vec2> checked_ccw(std::vector<Vec2> v) {
  const std::size_t n = v.size();
  if (n < 3) throw ConfigError("convex_geometry", "make_body", "polygon needs at least 3 vertices");
  double area = 0.0, extent = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    area += cross(v[i] - v[0], v[(i + 1) % n] - v[0]);
    extent = std::max(extent, (v[i] - v[0]).squaredNorm());
  }
  if (!(std::abs(area) >= 1e-14 * extent) || !(extent > 0.0) || !std::isfinite(area)) throw ConfigError("convex_geometry", "make_body", "polygon has empty interior");
  if (area < 0.0) std::reverse(v.begin(), v.end());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n, k = (i + 2) % n;
    const double c = cross(v[j] - v[i], v[k] - v[j]);
    if (c <= 1e-14 * (v[j] - v[i]).norm() * (v[k] - v[j]).norm()) {
      std::ostringstream os;
      os.precision(17);
      os << "nonconvex vertex triple (" << v[i][0] << "," << v[i][1] << ") (" << v[j][0] << ","
         << v[j][1] << ") (" << v[k][0] << "," << v[k][1] << ")";
      throw ConfigError("convex_geometry", "make_body", os.str());
    }
  }
  // A locally convex polygon may still wind more than once.
  double turn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = v[(i + 1) % n] - v[i], e1 = v[(i + 2) % n] - v[(i + 1) % n];
    turn += std::atan2(cross(e0, e1), e0.dot(e1));
  }
  if (turn > kTwoPi + 1e-6)
    throw ConfigError("convex_geometry", "make_body", "polygon winds more than once");
  return v;
}

}  // namespace

ConvexBody make_disk(double radius) {
  if (!(radius > 0.0)) throw ConfigError("convex_geometry", "make_body", "disk radius must be positive");
  return {BodyKind::disk, "disk", std::make_shared<DiskImpl>(radius)};
}

ConvexBody make_square(double h) {
  if (!(h > 0.0)) throw ConfigError("convex_geometry", "make_body", "square half side must be positive");
  std::vector<Vec2> v{{h, -h}, {h, h}, {-h, h}, {-h, -h}};
  return {BodyKind::square, "square", std::make_shared<PolygonImpl>(checked_ccw(v))};
}

ConvexBody make_superellipse(double n) {
  if (!(n >= 1.0)) throw ConfigError("convex_geometry", "make_body", "superellipse exponent must be >= 1");
  return {BodyKind::superellipse, "superellipse", std::make_shared<SuperellipseImpl>(n)};
}

ConvexBody make_polygon(const std::vector<Vec2>& vertices) {
  return {BodyKind::polygon, "polygon", std::make_shared<PolygonImpl>(checked_ccw(vertices))};
}

ConvexBody make_stadium(double half_length, double radius) {
  if (!(half_length > 0.0) || !(radius > 0.0))
    throw ConfigError("convex_geometry", "make_body", "stadium dimensions must be positive");
  return {BodyKind::stadium, "stadium", std::make_shared<StadiumImpl>(half_length, radius)};
}

ConvexBody make_affine(const ConvexBody& body, const Mat2& A, const Vec2& t) {
  if (!A.allFinite() || !t.allFinite() || !(std::abs(A.determinant()) >= 1e-12 * A.squaredNorm()))
    throw ConfigError("convex_geometry", "make_body", "affine map is singular or not finite");
  return {BodyKind::custom, "affine(" + body.name() + ")", std::make_shared<AffineImpl>(body, A, t)};
}

ConvexBody make_ellipse(double ax, double ay, double angle) {
  if (!(ax > 0.0) || !(ay > 0.0)) throw ConfigError("convex_geometry", "make_body", "ellipse axes must be positive");
  const double c = std::cos(angle), s = std::sin(angle);
  Mat2 r;
  r << c, -s, s, c;
  const Mat2 a = r * Vec2(ax, ay).asDiagonal();
  return {BodyKind::custom, "ellipse", std::make_shared<AffineImpl>(make_disk(), a, Vec2::Zero())};
}

}  // namespace vk
