#include "oracle_util.hpp"

#include "vk/ellipse.hpp"

#include <Eigen/SVD>
#include <doctest.h>

using namespace vk;
using doctest::Approx;

TEST_CASE("disk and square support") {
  const ConvexBody disk = make_disk();
  for (int k = 0; k < 16; ++k) CHECK(disk.support_angle(0.4 * k) == Approx(1.0).epsilon(1e-14));
  const ConvexBody sq = make_square();
  CHECK(sq.support(Vec2(1, 0)) == Approx(1.0));
  CHECK(sq.support(Vec2(1, 1).normalized()) == Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("superellipse support against a 1-D search") {
  const ConvexBody se = make_superellipse(2.0);
  CHECK(se.support(Vec2(1, 0)) == Approx(1.0).epsilon(1e-14));
  const Vec2 diag = Vec2(1, 1).normalized();
  CHECK(se.support(diag) == Approx(vkt::support_by_search(se, diag)).epsilon(1e-10));
  CHECK(se.support(diag) == Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  for (double a : {0.1, 0.7, 2.0, 3.9, 5.5}) {
    const Vec2 u = unit_vector(a);
    CHECK(se.support(u) == Approx(vkt::support_by_search(se, u)).epsilon(1e-9));
  }
}

TEST_CASE("support points lie on the boundary and attain the support") {
  for (const ConvexBody& b : {make_disk(), make_superellipse(3.0), make_stadium(2.0, 1.0), make_ellipse(2.0, 0.5, 0.3)}) {
    for (double a = 0.05; a < kTwoPi; a += 0.37) {
      const Vec2 u = unit_vector(a);
      const Vec2 p = b.support_point(u);
      CHECK(p.dot(u) == Approx(b.support(u)).epsilon(1e-10));
      CHECK(b.contains(p, 1e-9));
      CHECK(b.support(u) == Approx(vkt::support_by_search(b, u)).epsilon(1e-8));
    }
  }
}

TEST_CASE("boundary curvature matches finite differences") {
  for (const ConvexBody& b : {make_disk(2.0), make_superellipse(2.0), make_ellipse(2.0, 0.5, 0.3)}) {
    for (double t = 0.11; t < kTwoPi; t += 0.41) {
      const auto k = b.curvature(t);
      REQUIRE(k.has_value());
      CHECK(*k == Approx(vkt::curvature_fd([&](double s) { return b.boundary(s); }, t)).epsilon(1e-5));
    }
  }
  CHECK(*make_disk(2.0).curvature(1.0) == Approx(0.5));
}

TEST_CASE("polygon support, corners and flat faces") {
  const std::vector<Vec2> v = {{0, 0}, {2, 0}, {3, 1}, {1, 2}};
  const ConvexBody p = make_polygon(v);
  for (double a = 0.0; a < kTwoPi; a += 0.29) {
    const Vec2 u = unit_vector(a);
    double best = -1e300;
    for (const auto& x : v) best = std::max(best, x.dot(u));
    CHECK(p.support(u) == Approx(best).epsilon(1e-13));
  }
  CHECK(p.has_flat_faces());
  const auto face = p.flat_face(Vec2(0, -1));
  REQUIRE(face.has_value());
  CHECK(std::abs(face->p0[1]) < 1e-14);
  CHECK(std::abs(face->p1[1]) < 1e-14);
  CHECK_FALSE(p.curvature_at_normal(unit_vector(-3 * kPi / 8)).has_value());
  const auto flat = p.curvature_at_normal(Vec2(1, -1).normalized());
  REQUIRE(flat.has_value());
  CHECK(*flat == 0.0);
}

TEST_CASE("nonconvex polygon is rejected") {
  CHECK_THROWS_AS(make_polygon({{0, 0}, {2, 0}, {0.5, 0.5}, {0, 2}}), ConfigError);
  CHECK_THROWS_AS(make_disk(-1.0), ConfigError);
}

TEST_CASE("affine image support") {
  Mat2 A;
  A << 1.5, 0.4, -0.3, 0.8;
  const Vec2 t(0.2, -0.7);
  const ConvexBody k = make_superellipse(2.0);
  const ConvexBody lk = make_affine(k, A, t);
  for (double a = 0.0; a < kTwoPi; a += 0.31) {
    const Vec2 u = unit_vector(a);
    const Vec2 w = A.transpose() * u;
    CHECK(lk.support(u) == Approx(w.norm() * k.support(w.normalized()) + t.dot(u)).epsilon(1e-12));
  }
}

TEST_CASE("shape parameters") {
  const ShapeParam circle = shape_from_c(cplx(0, 1));
  CHECK(circle.alpha == Approx(2.0));
  CHECK(circle.beta == Approx(2.0));
  CHECK(circle.gamma == Approx(1.0));
  const ShapeParam seg = shape_from_c(cplx(0, 0));
  CHECK(seg.gamma == Approx(0.0));
  CHECK(seg.psi == Approx(0.0));
  CHECK(seg.alpha == Approx(2.0));

  // c = 1 + i: M = [[2, 0], [2, -2]]
  Mat2 M;
  M << 2, 0, 2, -2;
  Eigen::JacobiSVD<Mat2> svd(M, Eigen::ComputeFullU);
  const ShapeParam s = shape_from_c(cplx(1, 1));
  CHECK(s.alpha == Approx(svd.singularValues()[0]).epsilon(1e-13));
  CHECK(s.beta == Approx(svd.singularValues()[1]).epsilon(1e-13));
  const Vec2 u0 = svd.matrixU().col(0);
  CHECK(std::abs(std::sin(s.psi - angle_of(u0))) < 1e-12);
}

TEST_CASE("c_from_shape inverts shape_from_c") {
  for (double g : {0.0, 0.2, 0.5, 0.9, 1.0})
    for (double p : {0.0, 0.4, 1.3, 2.9})
      for (int o : {1, -1}) {
        const ShapeParam s = c_from_shape(g, p, o);
        CHECK(s.gamma == Approx(g).epsilon(1e-12));
        if (g < 1.0 && g > 0.0) {
          CHECK(std::abs(std::sin(s.psi - p)) < 1e-12);
          CHECK(s.trace_orientation == o);
        }
        const ShapeParam back = shape_from_c(s.c, s.chart);
        CHECK(back.gamma == Approx(s.gamma).epsilon(1e-12));
      }
}

TEST_CASE("ellipse real points") {
  const InscribedEllipse unit = make_inscribed(Vec2::Zero(), 0.5, shape_from_c(cplx(0, 1)));
  for (double th : {0.0, 1.0, 2.5}) CHECK(ellipse_real_point(unit, th).norm() == Approx(1.0).epsilon(1e-14));
  const InscribedEllipse e = make_inscribed(Vec2(0.3, -0.2), 0.7, shape_from_c(cplx(0.4, 0.9)));
  const Vec2 p = ellipse_real_point(e, 1.1), q = ellipse_real_point(e, 1.1 + kTwoPi);
  CHECK((p - q).norm() < 1e-14);
  const InscribedEllipse seg = make_inscribed(Vec2::Zero(), 0.5, shape_from_c(cplx(0, 0)));
  const Vec2 r = ellipse_real_point(seg, kPi / 3);
  CHECK(r[0] == Approx(std::cos(kPi / 3)).epsilon(1e-14));
  CHECK(std::abs(r[1]) < 1e-14);
}

TEST_CASE("complexified leaf") {
  const InscribedEllipse circle = make_inscribed(Vec2::Zero(), 0.5, shape_from_c(cplx(0, -1)));
  CHECK(std::abs(circle.b.z1 - cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(circle.b.z2 - cplx(0, -0.5)) < 1e-15);
  const ComplexPoint2 z = ellipse_complex_point(circle, 2.0);
  CHECK(std::abs(z.z1 - cplx(1.25, 0)) < 1e-14);
  CHECK(std::abs(z.z2 - cplx(0, -0.75)) < 1e-14);
  CHECK_THROWS_AS(ellipse_complex_point(circle, 0.0), DomainError);

  const InscribedEllipse e = make_inscribed(Vec2(0.1, 0.2), 0.6, c_from_shape(0.4, 1.0, -1));
  for (double t = 0.0; t < kTwoPi; t += 0.5) {
    const ComplexPoint2 w = ellipse_complex_point(e, std::polar(1.0, t));
    CHECK(w.is_real(1e-14));
    CHECK((w.real() - ellipse_real_point(e, trace_angle(e.shape, t))).norm() < 1e-13);
  }
  // segment leaf: points a + 2 Re(b zeta) along the real line through a
  const InscribedEllipse seg = make_inscribed(Vec2(0.1, 0.2), 0.5, shape_from_c(cplx(0.5, 0)));
  const ComplexPoint2 s = ellipse_complex_point(seg, 2.0);
  CHECK(std::abs(s.z2 - cplx(0.2) - 0.5 * (s.z1 - cplx(0.1))) < 1e-14);
}

TEST_CASE("chart change preserves the leaf") {
  const InscribedEllipse e = make_inscribed(Vec2(0.1, -0.3), 0.4, shape_from_c(cplx(2.0, 1.5)));
  const InscribedEllipse f = convert_chart(e);
  CHECK(f.shape.chart == Chart::second);
  const cplx phase = chart_change(e.shape).phase;
  for (cplx zeta : {cplx(1.5, 0.2), cplx(-3.0, 1.0), cplx(0.3, 2.0)}) {
    const ComplexPoint2 a = ellipse_complex_point(e, zeta), b = ellipse_complex_point(f, zeta * phase);
    CHECK((a - b).norm() < 1e-13);
  }
  CHECK_THROWS_AS(convert_chart(shape_from_c(cplx(0, 0))), DomainError);
}

TEST_CASE("ellipse curvature") {
  const InscribedEllipse unit = make_inscribed(Vec2::Zero(), 0.5, shape_from_c(cplx(0, 1)));
  CHECK(ellipse_curvature(unit, 0.3) == Approx(1.0).epsilon(1e-13));
  const InscribedEllipse e = make_inscribed(Vec2::Zero(), 1.0, c_from_shape(0.5, 0.0, 1));
  CHECK(ellipse_curvature(e, 0.0) == Approx(2.0).epsilon(1e-13));
  CHECK(ellipse_curvature(e, 0.0) == Approx(ellipse_curvature(e, kPi)).epsilon(1e-13));
  const InscribedEllipse g = make_inscribed(Vec2(0.2, 0.1), 0.8, c_from_shape(0.3, 0.7, 1));
  for (double th : {0.2, 1.4, 3.0})
    CHECK(ellipse_curvature(g, th) ==
          Approx(vkt::curvature_fd([&](double s) { return ellipse_real_point(g, s); }, th)).epsilon(1e-6));
  CHECK_THROWS_AS(ellipse_curvature(make_inscribed(Vec2::Zero(), 1.0, shape_from_c(cplx(0.3, 0))), 0.0), DomainError);
}

TEST_CASE("reference ellipse support") {
  const ShapeParam circle = shape_from_c(cplx(0, 1));
  for (double a : {0.0, 1.0, 4.0}) CHECK(ellipse_support(circle, unit_vector(a)) == Approx(2.0));
  const ShapeParam seg = c_from_shape(0.0, 0.0, 1);
  for (double a : {0.3, 1.2, 2.0}) CHECK(ellipse_support(seg, unit_vector(a)) == Approx(2.0 * std::abs(std::cos(a))));
  const ShapeParam half = c_from_shape(0.5, 0.0, 1);
  CHECK(ellipse_support(half, Vec2(0, 1)) == Approx(half.alpha / 2).epsilon(1e-13));
  CHECK(ellipse_support(half, Vec2(0, 1)) == Approx(half.beta).epsilon(1e-13));
}
