#include "oracle_util.hpp"

#include "vk/extremal_solver.hpp"

#include <Eigen/LU>
#include <doctest.h>

using namespace vk;
using doctest::Approx;

namespace {

Mat2 shape_matrix(const ShapeParam& s) {
  Mat2 R;
  R << std::cos(s.psi), -std::sin(s.psi), std::sin(s.psi), std::cos(s.psi);
  return R * Eigen::Vector2d(s.alpha, s.beta).asDiagonal();
}

// Maximal ellipse of a fixed shape in a triangle: the incircle after mapping the shape to a circle.
std::pair<Vec2, double> triangle_oracle(const std::vector<Vec2>& tri, const ShapeParam& s) {
  const Mat2 M = shape_matrix(s), Minv = M.inverse();
  const Vec2 A = Minv * tri[0], B = Minv * tri[1], C = Minv * tri[2];
  const double a = (B - C).norm(), b = (C - A).norm(), c = (A - B).norm();
  const double area = 0.5 * std::abs(cross(B - A, C - A));
  const Vec2 center = (a * A + b * B + c * C) / (a + b + c);
  return {M * center, 2 * area / (a + b + c)};
}

// Longest chord of a polygon in direction e.
double longest_chord(const std::vector<Vec2>& poly, const Vec2& e) {
  const Vec2 n = perp(e);
  const auto chord = [&](double off) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
      const double dp = p.dot(n) - off, dq = q.dot(n) - off;
      if ((dp <= 0 && dq >= 0) || (dp >= 0 && dq <= 0)) {
        const Vec2 x = dp == dq ? p : p + (dp / (dp - dq)) * (q - p);
        lo = std::min(lo, x.dot(e));
        hi = std::max(hi, x.dot(e));
        if (dp == dq) {
          lo = std::min(lo, q.dot(e));
          hi = std::max(hi, q.dot(e));
        }
      }
    }
    return hi > lo ? hi - lo : 0.0;
  };
  double smin = 1e300, smax = -1e300;
  for (const auto& p : poly) smin = std::min(smin, p.dot(n)), smax = std::max(smax, p.dot(n));
  auto r = boost::math::tools::brent_find_minima([&](double s) { return -chord(s); }, smin, smax, 52);
  return -r.second;
}

}  // namespace

TEST_CASE("disk: circle leaf is the boundary") {
  const ConvexBody disk = make_disk();
  const InscribedEllipse e = solve_extremal(disk, shape_from_c(cplx(0, 1)));
  CHECK(e.a.norm() < 1e-9);
  CHECK(e.rho == Approx(0.5).epsilon(1e-9));
  CHECK(contact_points(disk, e).count_class == ContactClass::continuum);
}

TEST_CASE("disk: segment leaves are diameters") {
  const ConvexBody disk = make_disk();
  CHECK(solve_extremal(disk, c_from_shape(0.0, 0.0, 1)).rho == Approx(0.5).epsilon(1e-12));
  for (double psi : {0.0, 0.7, 2.2}) {
    const ShapeParam s = c_from_shape(0.0, psi, 1);
    const InscribedEllipse e = solve_extremal(disk, s);
    CHECK(e.a.norm() < 1e-8);
    // half-length rho * alpha
    CHECK(e.rho * s.alpha == Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("disk: ellipse touches at two antipodal points") {
  const ConvexBody disk = make_disk();
  const InscribedEllipse e = solve_extremal(disk, c_from_shape(0.5, 0.4, 1));
  const ContactReport r = contact_points(disk, e);
  REQUIRE(r.count_class == ContactClass::two);
  REQUIRE(r.points.size() == 2);
  CHECK(angle_distance(r.points[0].t, r.points[1].t) == Approx(kPi).epsilon(1e-8));
  CHECK(r.unique);
}

TEST_CASE("square: inscribed circle touches all four sides") {
  const ConvexBody sq = make_square();
  const InscribedEllipse e = solve_extremal(sq, shape_from_c(cplx(0, 1)));
  CHECK(e.rho == Approx(0.5).epsilon(1e-10));
  const ContactReport r = contact_points(sq, e);
  CHECK(r.count_class == ContactClass::four_plus);
  REQUIRE(r.points.size() == 4);
  for (const auto& p : r.points) {
    CHECK(std::abs(p.point.norm() - 1.0) < 1e-8);
    CHECK(std::min(std::abs(p.point[0]), std::abs(p.point[1])) < 1e-8);
  }
}

TEST_CASE("symmetric bodies: rho = min h / e") {
  auto g = vkt::rng(11);
  for (const ConvexBody& body : {make_superellipse(2.0), make_stadium(2.0, 1.0), make_square(), make_superellipse(1.5)}) {
    for (int k = 0; k < 25; ++k) {
      const ShapeParam s = c_from_shape(vkt::uniform(g, 0.0, 1.0), vkt::uniform(g, 0.0, kPi), k % 2 ? 1 : -1);
      const InscribedEllipse e = solve_extremal(body, s);
      CHECK(e.rho == Approx(vkt::symmetric_rho(body, s)).epsilon(1e-8));
      CHECK(e.a.norm() < 1e-7);
      CHECK(max_violation(body, e) <= 1e-9);
    }
  }
}

TEST_CASE("triangle: incircle after the shape map") {
  const std::vector<Vec2> tri = {{0, 0}, {3, 0.5}, {1, 2}};
  const ConvexBody body = make_polygon(tri);
  auto g = vkt::rng(5);
  for (int k = 0; k < 25; ++k) {
    const ShapeParam s = c_from_shape(vkt::uniform(g, 0.05, 1.0), vkt::uniform(g, 0.0, kPi), 1);
    const auto [a, rho] = triangle_oracle(tri, s);
    const InscribedEllipse e = solve_extremal(body, s);
    CHECK(e.rho == Approx(rho).epsilon(1e-8));
    CHECK((e.a - a).norm() < 1e-7);
    CHECK(contact_points(body, e).count_class == ContactClass::three);
  }
}

TEST_CASE("polygon: segment leaves are longest chords") {
  const std::vector<Vec2> quad = {{0, 0}, {2, 0}, {3, 1}, {1, 2.5}};
  const ConvexBody body = make_polygon(quad);
  for (double psi : {0.0, 0.5, 1.2, 2.0, 2.8}) {
    const ShapeParam s = c_from_shape(0.0, psi, 1);
    const InscribedEllipse e = solve_extremal(body, s);
    CHECK(2.0 * e.rho * s.alpha == Approx(longest_chord(quad, unit_vector(psi))).epsilon(1e-8));
  }
}

TEST_CASE("scaling the body scales rho and b") {
  const ShapeParam s = c_from_shape(0.6, 0.9, 1);
  const ConvexBody k = make_superellipse(2.0);
  const ConvexBody k2 = make_affine(k, 2.0 * Mat2::Identity(), Vec2::Zero());
  const InscribedEllipse e = solve_extremal(k, s), e2 = solve_extremal(k2, s);
  CHECK(e2.rho == Approx(2 * e.rho).epsilon(1e-9));
  CHECK((e2.b - cplx(2.0) * e.b).norm() < 1e-9);
}

TEST_CASE("tiny, huge and distant bodies") {
  const std::vector<Vec2> tri = {{0, 0}, {3, 0.5}, {1, 2}};
  const ShapeParam s = c_from_shape(0.4, 0.7, 1);
  const auto [a, rho] = triangle_oracle(tri, s);
  for (double scale : {1e-120, 1e-6, 1e6, 1e120}) {
    const ConvexBody k = make_affine(make_polygon(tri), scale * Mat2::Identity(), Vec2::Zero());
    const InscribedEllipse e = solve_extremal(k, s);
    CHECK(e.rho == Approx(scale * rho).epsilon(1e-8));
    CHECK((e.a - scale * a).norm() < 1e-7 * scale);
  }
  const Vec2 far(1e5, -3e5);
  const InscribedEllipse e = solve_extremal(make_polygon({tri[0] + far, tri[1] + far, tri[2] + far}), s);
  CHECK(e.rho == Approx(rho).epsilon(1e-8));
  CHECK((e.a - a - far).norm() < 1e-6);
  CHECK_THROWS_AS(solve_extremal(make_affine(make_disk(), 1e-200 * Mat2::Identity(), Vec2::Zero()), s), NumericError);
}

TEST_CASE("contacts lie on both curves with curvature domination") {
  auto g = vkt::rng(2);
  const ConvexBody body = make_superellipse(2.0);
  for (int k = 0; k < 30; ++k) {
    const ShapeParam s = c_from_shape(vkt::uniform(g, 0.05, 0.95), vkt::uniform(g, 0.0, kPi), 1);
    const InscribedEllipse e = solve_extremal(body, s);
    const ContactReport r = contact_points(body, e);
    CHECK(r.points.size() >= 2);
    for (const auto& p : r.points) {
      CHECK(std::abs(p.point.dot(p.normal) - body.support(p.normal)) < 1e-8);
      CHECK((p.point - ellipse_real_point(e, p.theta)).norm() < 1e-6);
      REQUIRE(p.body_curvature.has_value());
      CHECK(p.ellipse_curvature >= *p.body_curvature - 1e-7);
    }
  }
}

TEST_CASE("stadium: circle leaf slides along the flat faces") {
  const ConvexBody st = make_stadium(2.0, 1.0);
  const InscribedEllipse e = solve_extremal(st, shape_from_c(cplx(0, 1)));
  CHECK(e.rho == Approx(0.5).epsilon(1e-10));
  CHECK(e.a.norm() < 1e-9);
  const auto slide = center_slide(st, e);
  REQUIRE(slide.has_value());
  CHECK(std::abs(std::abs(slide->t[0]) - 1.0) < 1e-12);
  CHECK(slide->s_minus == Approx(2.0).epsilon(1e-9));
  CHECK(slide->s_plus == Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(contact_points(st, e).unique);
  CHECK_FALSE(center_slide(make_disk(), solve_extremal(make_disk(), c_from_shape(0.5, 0.0, 1))).has_value());
}

TEST_CASE("cache returns the solver result") {
  const ConvexBody body = make_superellipse(2.0);
  ExtremalCache cache(body);
  const ShapeParam s = c_from_shape(0.3, 1.7, -1);
  const InscribedEllipse a = cache.get(s), b = solve_extremal(body, s);
  CHECK(a.rho == b.rho);
  CHECK((a.a - b.a).norm() == 0.0);
  CHECK(cache.size() == 1);
  cache.get(s);
  CHECK(cache.size() == 1);
}
