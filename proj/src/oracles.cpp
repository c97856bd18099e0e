#include "vk/oracles.hpp"

#include <algorithm>
#include <limits>

namespace vk {

cplx joukowski_inverse(cplx zeta) {
  const cplx r = std::sqrt(zeta * zeta - 1.0);
  const cplx p = zeta + r, m = zeta - r;
  return std::abs(p) >= std::abs(m) ? p : m;
}

double log_joukowski(cplx zeta) {
  return std::max(0.0, std::log(std::abs(joukowski_inverse(zeta))));
}

double V_square(const ComplexPoint2& z) {
  return std::max(log_joukowski(z.z1), log_joukowski(z.z2));
}

double V_disk(const ComplexPoint2& z) {
  double u = std::norm(z.z1) + std::norm(z.z2) + std::abs(z.z1 * z.z1 + z.z2 * z.z2 - 1.0);
  u = std::max(u, 1.0);
  return 0.5 * std::log(u + std::sqrt((u - 1.0) * (u + 1.0)));
}

OracleFn1 interval_oracle() { return {"interval", log_joukowski}; }

OracleFn1 planar_disk_oracle(double radius) {
  if (!(radius > 0.0)) throw ConfigError("oracles", "planar_disk_oracle", "radius must be positive");
  return {"disk1d", [radius](cplx w) { return std::max(0.0, std::log(std::abs(w) / radius)); }};
}

OracleFn square_oracle() { return {"square", V_square, "[-1,1]^2"}; }
OracleFn disk_oracle() { return {"disk", V_disk, "closed real unit disk"}; }

OracleFn V_product(const OracleFn1& v1, const OracleFn1& v2) {
  return {v1.name + "x" + v2.name,
          [f = v1.eval, g = v2.eval](const ComplexPoint2& z) { return std::max(f(z.z1), g(z.z2)); },
          "product"};
}

PolyMap identity_map() {
  auto id = [](const ComplexPoint2& z) { return z; };
  return {"identity", 1, id, id};
}

PolyMap squaring_map() {
  auto sq = [](const ComplexPoint2& z) { return ComplexPoint2(z.z1 * z.z1, z.z2 * z.z2); };
  return {"square", 2, sq, sq};
}

PolyMap affine_map(const Mat2& A, const Vec2& t) {
  auto lin = [A](const ComplexPoint2& z) {
    return ComplexPoint2(A(0, 0) * z.z1 + A(0, 1) * z.z2, A(1, 0) * z.z1 + A(1, 1) * z.z2);
  };
  auto full = [lin, t](const ComplexPoint2& z) { return lin(z) + ComplexPoint2::from_real(t); };
  return {"affine", 1, full, lin};
}

namespace {

// min |P^(u)| over a grid of the unit sphere of C^2.
double leading_part_floor(const PolyMap& p) {
  constexpr int n = 24;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double t = 0.5 * kPi * i / n;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const ComplexPoint2 u(std::cos(t) * std::polar(1.0, kTwoPi * j / n),
                              std::sin(t) * std::polar(1.0, kTwoPi * k / n));
        worst = std::min(worst, p.leading(u).norm());
      }
  }
  return worst;
}

}  // namespace

OracleFn V_poly_preimage(const OracleFn& v, const PolyMap& p) {
  if (p.degree < 1) throw ConfigError("oracles", "V_poly_preimage", "degree must be >= 1");
  if (!(leading_part_floor(p) > 1e-8))
    throw ConfigError("oracles", "V_poly_preimage", "leading homogeneous part of " + p.name + " vanishes off 0");
  const double d = p.degree;
  return {v.name + "_preimage_" + p.name,
          [f = v.eval, map = p.map, d](const ComplexPoint2& z) { return f(map(z)) / d; },
          "preimage of " + v.domain};
}

OracleFn named_oracle(const std::string& name) {
  if (name == "square") return square_oracle();
  if (name == "disk") return disk_oracle();
  if (name == "square_preimage") return V_poly_preimage(square_oracle(), squaring_map());
  throw ConfigError("oracles", "named_oracle", "unknown oracle '" + name + "'");
}

}  // namespace vk
