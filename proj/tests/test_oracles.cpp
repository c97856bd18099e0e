#include "oracle_util.hpp"

#include "vk/oracles.hpp"

#include <doctest.h>

using namespace vk;
using doctest::Approx;

TEST_CASE("joukowski inverse") {
  CHECK(std::abs(joukowski_inverse(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(joukowski_inverse(2.0)) == Approx(2.0 + std::sqrt(3.0)).epsilon(1e-15));
  CHECK(std::abs(joukowski_inverse(-2.0)) == Approx(2.0 + std::sqrt(3.0)).epsilon(1e-15));
  CHECK(log_joukowski(0.3) == 0.0);
  auto g = vkt::rng(1);
  for (int k = 0; k < 200; ++k) {
    const cplx z(vkt::uniform(g, -4, 4), vkt::uniform(g, -4, 4));
    const cplx h = joukowski_inverse(z);
    CHECK(std::abs(h) >= 1.0 - 1e-14);
    CHECK(std::abs(0.5 * (h + 1.0 / h) - z) < 1e-12);
  }
}

TEST_CASE("square oracle") {
  CHECK(V_square({2.0, 0.0}) == Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-15));
  CHECK(V_square({0.3, -0.9}) == 0.0);
  CHECK(V_square({2.0, cplx(0, 2)}) == Approx(std::log(2.0 + std::sqrt(5.0))).epsilon(1e-15));
}

TEST_CASE("disk oracle") {
  CHECK(V_disk({0.0, cplx(0, 1)}) == Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(V_disk({1.0, 0.0}) == Approx(0.0));
  CHECK(V_disk({0.3, -0.4}) == 0.0);
  CHECK(V_disk({1.25, cplx(0, -0.75)}) == Approx(std::log(2.0)).epsilon(1e-14));
  // on a complex line through 0 in a real direction the disk restricts to [-1, 1]
  auto g = vkt::rng(4);
  for (int k = 0; k < 100; ++k) {
    const cplx lam(vkt::uniform(g, -3, 3), vkt::uniform(g, -3, 3));
    const Vec2 e = unit_vector(vkt::uniform(g, 0, kPi));
    CHECK(V_disk({lam * e[0], lam * e[1]}) == Approx(log_joukowski(lam)).epsilon(1e-12));
  }
}

TEST_CASE("product formula") {
  const OracleFn sq = V_product(interval_oracle(), interval_oracle());
  auto g = vkt::rng(7);
  for (int k = 0; k < 50; ++k) {
    const ComplexPoint2 z = vkt::random_point(g, 3.0);
    CHECK(sq.eval(z) == Approx(V_square(z)).epsilon(1e-15));
  }
  const OracleFn mixed = V_product(interval_oracle(), planar_disk_oracle(2.0));
  const OracleFn swapped = V_product(planar_disk_oracle(2.0), interval_oracle());
  const ComplexPoint2 z(cplx(0.5, 0.2), cplx(3.0, 4.0));
  CHECK(mixed.eval(z) == Approx(std::max(log_joukowski(z.z1), std::log(2.5))).epsilon(1e-15));
  CHECK(swapped.eval({z.z2, z.z1}) == Approx(mixed.eval(z)).epsilon(1e-15));
  CHECK(planar_disk_oracle(2.0).eval(cplx(1.0, 1.0)) == 0.0);
}

TEST_CASE("polynomial preimages") {
  const OracleFn id = V_poly_preimage(square_oracle(), identity_map());
  const ComplexPoint2 z(cplx(1.5, 0.3), cplx(-0.2, 2.0));
  CHECK(id.eval(z) == Approx(V_square(z)).epsilon(1e-15));

  const OracleFn pre = V_poly_preimage(square_oracle(), squaring_map());
  // P^-1(S) = X x X with X the cross [-1,1] u i[-1,1]
  CHECK(pre.eval({cplx(0, 0.5), 0.7}) == 0.0);
  CHECK(pre.eval({cplx(0, 0.9), cplx(0, -0.9)}) == 0.0);
  CHECK(pre.eval(z) == Approx(0.5 * V_square({z.z1 * z.z1, z.z2 * z.z2})).epsilon(1e-15));
  // logarithmic growth with coefficient one
  const double r1 = pre.eval(cplx(1e4) * z) - std::log(1e4), r2 = pre.eval(cplx(1e6) * z) - std::log(1e6);
  CHECK(std::abs(r1 - r2) < 1e-6);

  PolyMap bad{"degenerate", 2, [](const ComplexPoint2& w) { return ComplexPoint2(w.z1 * w.z1, w.z1 * w.z2); },
              [](const ComplexPoint2& w) { return ComplexPoint2(w.z1 * w.z1, w.z1 * w.z2); }};
  CHECK_THROWS_AS(V_poly_preimage(square_oracle(), bad), ConfigError);
}

TEST_CASE("affine pullback") {
  Mat2 A;
  A << 2.0, 0.5, -0.3, 1.0;
  const Vec2 t(0.1, -0.4);
  const OracleFn pb = V_poly_preimage(disk_oracle(), affine_map(A, t));
  const ComplexPoint2 z(cplx(0.7, 0.2), cplx(-1.1, 0.5));
  const ComplexPoint2 w(A(0, 0) * z.z1 + A(0, 1) * z.z2 + t[0], A(1, 0) * z.z1 + A(1, 1) * z.z2 + t[1]);
  CHECK(pb.eval(z) == Approx(V_disk(w)).epsilon(1e-15));
}

TEST_CASE("named oracles") {
  CHECK(named_oracle("square").eval({2.0, 0.0}) == Approx(V_square({2.0, 0.0})));
  CHECK(named_oracle("disk").eval({0.0, cplx(0, 1)}) == Approx(V_disk({0.0, cplx(0, 1)})));
  CHECK_NOTHROW(named_oracle("square_preimage"));
  CHECK_THROWS_AS(named_oracle("triangle"), ConfigError);
}
