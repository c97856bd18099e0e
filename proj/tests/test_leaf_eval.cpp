#include "oracle_util.hpp"

#include "vk/leaf_eval.hpp"
#include "vk/oracles.hpp"

#include <doctest.h>

using namespace vk;
using doctest::Approx;

TEST_CASE("reference values") {
  const ConvexBody sq = make_square(), disk = make_disk();
  CHECK(eval_V(sq, {2.0, 0.0}).value == Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-10));
  const LeafSolution on = eval_V(disk, {1.0, 0.0});
  CHECK(on.value == 0.0);
  CHECK(on.on_body);
  CHECK(eval_V(disk, {1.25, cplx(0, -0.75)}).value == Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("square and disk against closed forms") {
  auto g = vkt::rng(21);
  ExtremalCache sq(make_square()), disk(make_disk());
  for (int k = 0; k < 60; ++k) {
    const ComplexPoint2 z = vkt::random_point(g, k < 30 ? 3.0 : 10.0);
    CHECK(eval_V(sq, z).value == Approx(V_square(z)).epsilon(1e-8));
    CHECK(eval_V(disk, z).value == Approx(V_disk(z)).epsilon(1e-8));
  }
}

TEST_CASE("leaf consistency on the superellipse") {
  auto g = vkt::rng(8);
  const ConvexBody body = make_superellipse(2.0);
  ExtremalCache cache(body);
  for (int k = 0; k < 40; ++k) {
    const InscribedEllipse e = cache.get(c_from_shape(vkt::uniform(g, 0.0, 1.0), vkt::uniform(g, 0.0, kPi), k % 2 ? 1 : -1));
    const cplx zeta = std::polar(vkt::uniform(g, 1.05, 6.0), vkt::uniform(g, 0.0, kTwoPi));
    const LeafSolution s = eval_V(cache, ellipse_complex_point(e, zeta));
    CHECK(s.value == Approx(std::log(std::abs(zeta))).epsilon(1e-9));
    CHECK(s.residual < 1e-8);
  }
}

TEST_CASE("harmonic along the leaf") {
  ExtremalCache cache(make_stadium(2.0, 1.0));
  const InscribedEllipse e = cache.get(c_from_shape(0.7, 2.0, 1));
  const cplx zeta = std::polar(1.7, 0.4);
  const double v0 = eval_V(cache, ellipse_complex_point(e, zeta)).value;
  for (double s : {0.1, 0.5, 1.5})
    CHECK(eval_V(cache, ellipse_complex_point(e, zeta * std::exp(s))).value - v0 == Approx(s).epsilon(1e-9));
}

TEST_CASE("continuation from a hint") {
  ExtremalCache cache(make_superellipse(2.0));
  const ComplexPoint2 z(cplx(1.3, 0.4), cplx(-0.5, 0.9));
  const LeafSolution s = eval_V(cache, z);
  const ComplexPoint2 w = z + ComplexPoint2(cplx(1e-3, 0), cplx(0, -2e-3));
  CHECK(eval_V_from(cache, w, s).value == Approx(eval_V(cache, w).value).epsilon(1e-10));
}

TEST_CASE("membership") {
  const ConvexBody sq = make_square();
  CHECK(in_body(sq, {0.5, -1.0}));
  CHECK_FALSE(in_body(sq, {0.5, 1.01}));
  CHECK_FALSE(in_body(sq, {cplx(0.5, 1e-9), 0.0}));
}

TEST_CASE("closest leaf parameter") {
  const ConvexBody body = make_superellipse(2.0);
  const InscribedEllipse e = solve_extremal(body, c_from_shape(0.4, 0.8, 1));
  const cplx zeta = std::polar(2.5, 1.1);
  const auto [found, dist] = closest_leaf_parameter(e, ellipse_complex_point(e, zeta));
  CHECK(dist < 1e-10);
  CHECK(std::abs(found - zeta) < 1e-8);
}

TEST_CASE("brute force agrees with the closed form") {
  const LeafGrid grid = build_leaf_grid(make_square(), 128);
  const BruteForceValue b = eval_V_bruteforce(grid, {2.0, 0.0});
  REQUIRE(b.found);
  CHECK(std::abs(b.value - std::log(2.0 + std::sqrt(3.0))) < 1e-3);

  // real point outside K: the minimizing leaf meets z on its real axis
  const BruteForceValue r = eval_V_bruteforce(grid, {1.5, 0.7});
  REQUIRE(r.found);
  CHECK(std::abs(std::sin(std::arg(r.zeta))) < 0.05);
  CHECK(r.value == Approx(V_square({1.5, 0.7})).epsilon(1e-2));

  const ComplexPoint2 z(cplx(1.5, 0.8), cplx(-0.4, 0.3));
  const BruteForceValue generic = eval_V_bruteforce(grid, z);
  REQUIRE(generic.found);
  CHECK(std::abs(generic.value - V_square(z)) < 1e-2);

  // moving along a grid leaf adds log of the scale
  const InscribedEllipse& e = grid.at(0, 40, 17);
  const double v1 = eval_V_bruteforce(grid, ellipse_complex_point(e, std::polar(1.6, 0.3))).value;
  const double v2 = eval_V_bruteforce(grid, ellipse_complex_point(e, std::polar(1.6 * std::exp(0.4), 0.3))).value;
  CHECK(v2 - v1 == Approx(0.4).epsilon(1e-6));
}

TEST_CASE("level sets") {
  const auto s2 = level_set(make_square(), 2.0, 32);
  CHECK(s2.size() == 2u * 32 * 32 * 32);
  double worst = 0.0;
  for (const auto& s : s2) worst = std::max(worst, std::abs(V_square(s.z) - std::log(2.0)));
  CHECK(worst < 1e-8);

  const auto d15 = level_set(make_disk(), 1.5, 32), d3 = level_set(make_disk(), 3.0, 32);
  REQUIRE(d15.size() == d3.size());
  for (std::size_t k = 0; k < d15.size(); k += 97) {
    CHECK(V_disk(d15[k].z) == Approx(std::log(1.5)).epsilon(1e-9));
    CHECK(V_disk(d15[k].z) < V_disk(d3[k].z));
  }
}

TEST_CASE("far points") {
  const ExtremalCache disk(make_disk());
  const ExtremalCache sq(make_square());
  for (double s : {1e3, 1e5, 1e7}) {
    const ComplexPoint2 z{cplx(s, 0.3), cplx(0.2 * s, -0.1)};
    CHECK(eval_V(disk, z).value == Approx(V_disk(z)).epsilon(1e-12));
    CHECK(eval_V(sq, z).value == Approx(V_square(z)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(eval_V(disk, ComplexPoint2{cplx(std::nan(""), 0), 0.0}), DomainError);
  CHECK_THROWS_AS(eval_V(disk, ComplexPoint2{1e300, 1e300}), DomainError);
}
