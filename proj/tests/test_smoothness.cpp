#include "oracle_util.hpp"

#include "vk/oracles.hpp"
#include "vk/smoothness.hpp"

#include <doctest.h>

using namespace vk;
using doctest::Approx;

TEST_CASE("disk circle leaf is a continuum contact") {
  const ConvexBody disk = make_disk();
  const SmoothnessVerdict v = classify_leaf(disk, solve_extremal(disk, shape_from_c(cplx(0, 1))));
  CHECK(v.leaf_case == LeafCase::continuum);
  CHECK(v.verdict == Verdict::known_nonsmooth_candidate);
}

TEST_CASE("square inscribed circle touches four sides") {
  const ConvexBody sq = make_square();
  const SmoothnessVerdict v = classify_leaf(sq, solve_extremal(sq, shape_from_c(cplx(0, 1))));
  CHECK(v.leaf_case == LeafCase::four_plus);
  CHECK(v.verdict == Verdict::known_nonsmooth_candidate);
}

TEST_CASE("stadium leaves on the two segments are pluriharmonic") {
  const ConvexBody st = make_stadium(2.0, 1.0);
  for (double g : {0.6, 1.0}) {
    const SmoothnessVerdict v = classify_leaf(st, solve_extremal(st, c_from_shape(g, 0.0, 1)));
    CHECK(v.leaf_case == LeafCase::pluriharmonic);
    CHECK(v.verdict == Verdict::smooth_Cr);
  }
}

TEST_CASE("three contacts and corners") {
  const ConvexBody tri = make_polygon({{0, 0}, {3, 0.5}, {1, 2}});
  const SmoothnessVerdict v = classify_leaf(tri, solve_extremal(tri, c_from_shape(0.5, 0.3, 1)));
  CHECK(v.leaf_case == LeafCase::three_contact);
  CHECK(v.curvature_margins.size() == 3);
  CHECK(v.verdict == Verdict::smooth_Cr);

  const ConvexBody sq = make_square();
  const SmoothnessVerdict diag = classify_leaf(sq, solve_extremal(sq, c_from_shape(0.0, kPi / 4, 1)));
  CHECK(diag.leaf_case == LeafCase::inapplicable);
}

TEST_CASE("point verdicts") {
  ExtremalCache sq(make_square()), disk(make_disk()), se(make_superellipse(2.0));
  CHECK(classify_point(sq, {2.0, cplx(1e-3, 1e-3)}).leaf_case == LeafCase::pluriharmonic);
  const SmoothnessVerdict c = classify_point(disk, {std::cosh(0.5), cplx(0, std::sinh(0.5))});
  CHECK(c.verdict == Verdict::known_nonsmooth_candidate);
  const SmoothnessVerdict g = classify_point(se, {cplx(1.3, 0.4), cplx(-0.5, 0.9)});
  CHECK(g.leaf_case == LeafCase::two_contact);
  CHECK(g.verdict == Verdict::smooth_Cr);
  for (double m : g.curvature_margins) CHECK(m > kMarginTol);
  CHECK_THROWS_AS(classify_point(sq, {0.5, -0.5}), DomainError);
}

TEST_CASE("complex Hessian statistic") {
  const auto ph = [](const ComplexPoint2& z) { return log_joukowski(z.z1); };
  const ComplexPoint2 z(cplx(1.5, 0.7), cplx(0.2, 0.1));
  CHECK(complex_hessian_norm(ph, z, 1e-3) < 1e-8);
  // truncation error is at least fourth order in h
  const double coarse = complex_hessian_norm(ph, z, 4e-2), fine = complex_hessian_norm(ph, z, 2e-2);
  CHECK(coarse > 0.0);
  CHECK(fine < coarse / 12.0);
  const auto q = [](const ComplexPoint2& w) { return std::norm(w.z1); };
  CHECK(complex_hessian_norm(q, z, 1e-3) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("finite-difference pluriharmonicity of V") {
  const ConvexBody st = make_stadium(2.0, 1.0);
  ExtremalCache cache(st);
  const InscribedEllipse e = cache.get(c_from_shape(0.7, 0.0, 1));
  CHECK(pluriharmonic_test(cache, ellipse_complex_point(e, std::polar(1.8, 0.6)), 1e-3) <= 1e-4);

  ExtremalCache sq(make_square());
  const InscribedEllipse four = sq.get(shape_from_c(cplx(0, 1)));
  const ComplexPoint2 z = ellipse_complex_point(four, std::polar(1.5, 0.3));
  CHECK(pluriharmonic_test(sq, z, 1e-3) > 1e-2);
  CHECK(complex_hessian_norm(V_square, z, 1e-3) > 1e-2);
}

TEST_CASE("scan on the disk flags the circle column") {
  const ScanReport r = scan_bad_parameters(make_disk(), {32});
  REQUIRE(r.levels.size() == 1);
  for (const auto& c : r.levels[0].cells) CHECK(c.flagged == (c.gamma == 1.0));
  CHECK(r.levels[0].flagged_fraction == Approx(1.0 / 33.0));
}

TEST_CASE("scan on the superellipse refines with slope near one") {
  const ScanReport r = scan_bad_parameters(make_superellipse(2.0), {32, 64});
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[1].flagged_fraction < r.levels[0].flagged_fraction);
  CHECK(r.slope > 0.7);
  CHECK(r.slope < 1.3);
}
