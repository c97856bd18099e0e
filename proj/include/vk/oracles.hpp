// Closed-form extremal functions used as ground truth.
#pragma once

#include "vk/types.hpp"

#include <functional>
#include <string>

namespace vk {

/// zeta + sqrt(zeta^2 - 1), branch with modulus >= 1.
cplx joukowski_inverse(cplx zeta);

/// log|h(zeta)|, the extremal function of [-1, 1]; 0 on the interval.
double log_joukowski(cplx zeta);

double V_square(const ComplexPoint2& z);

/// Real unit disk: 1/2 log h(u), u = |z1|^2 + |z2|^2 + |z1^2 + z2^2 - 1|.
double V_disk(const ComplexPoint2& z);

struct OracleFn1 {
  std::string name;
  std::function<double(cplx)> eval;
};

struct OracleFn {
  std::string name;
  std::function<double(const ComplexPoint2&)> eval;
  std::string domain;
};

OracleFn1 interval_oracle();
/// log+(|w| / radius), the closed disk of the given radius in C.
OracleFn1 planar_disk_oracle(double radius);

OracleFn square_oracle();
OracleFn disk_oracle();

OracleFn V_product(const OracleFn1& v1, const OracleFn1& v2);

/// Polynomial self-map of C^2 with its top-degree homogeneous part.
struct PolyMap {
  std::string name;
  int degree = 1;
  std::function<ComplexPoint2(const ComplexPoint2&)> map;
  std::function<ComplexPoint2(const ComplexPoint2&)> leading;
};

PolyMap identity_map();
/// (z1^2, z2^2).
PolyMap squaring_map();
/// z -> A z + t, real A.
PolyMap affine_map(const Mat2& A, const Vec2& t);

/// z -> V(P(z)) / d. Rejects P whose leading part vanishes off the origin.
OracleFn V_poly_preimage(const OracleFn& v, const PolyMap& p);

/// Lookup by name: square, disk, square_preimage.
OracleFn named_oracle(const std::string& name);

}  // namespace vk
