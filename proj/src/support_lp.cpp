#include "vk/support_lp.hpp"

#include <Eigen/LU>

namespace vk {

bool SupportLp::factor() {
  Eigen::Matrix3d b;
  for (int k = 0; k < 3; ++k) {
    const Col& c = cols_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])];
    b.col(k) << c.ux, c.uy, c.e;
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(b);
  if (!lu.isInvertible()) return false;
  binv_ = lu.inverse();
  lambda_ = binv_.col(2);
  return true;
}

SupportLpResult SupportLp::solve(int max_pivots) {
  const int n = static_cast<int>(cols_.size());
  if (n < 3) throw NumericError("extremal_solver", "solve_extremal", "fewer than 3 directions", 0.0);
  if (basis_[0] < 0) {
    basis_ = {0, n / 3, (2 * n) / 3};
    if (!factor() || lambda_.minCoeff() < 0.0)
      throw NumericError("extremal_solver", "solve_extremal", "initial directions do not span the plane", 0.0);
  }

  SupportLpResult r;
  int degenerate = 0;
  for (int it = 0;; ++it) {
    Eigen::Vector3d cb;
    for (int k = 0; k < 3; ++k) cb[k] = cols_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k)])].h;
    const Eigen::Vector3d y = binv_.transpose() * cb;

    // Pricing: Dantzig, switching to Bland's rule while cycling is possible.
    const bool bland = degenerate > 8;
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == basis_[0] || j == basis_[1] || j == basis_[2]) continue;
      const Col& c = cols_[static_cast<std::size_t>(j)];
      const double d = c.h - (y[0] * c.ux + y[1] * c.uy + y[2] * c.e);
      if (d < -1e-12 * (1.0 + std::abs(c.h))) {
        if (bland) {
          enter = j;
          break;
        }
        if (d < best) {
          best = d;
          enter = j;
        }
      }
    }
    // Past the pivot limit only rounding-level improvements remain; accept the vertex.
    if (enter < 0 || it > max_pivots) {
      r.a = Vec2(y[0], y[1]);
      r.rho = y[2];
      r.basis = basis_;
      for (int k = 0; k < 3; ++k) r.weights[static_cast<std::size_t>(k)] = lambda_[k];
      r.pivots = it;
      return r;
    }

    const Col& c = cols_[static_cast<std::size_t>(enter)];
    const Eigen::Vector3d w = binv_ * Eigen::Vector3d(c.ux, c.uy, c.e);
    int leave = -1;
    double ratio = 0.0;
    for (int k = 0; k < 3; ++k) {
      if (w[k] > 1e-15) {
        const double q = std::max(0.0, lambda_[k]) / w[k];
        if (leave < 0 || q < ratio - 1e-18 ||
            (bland && q <= ratio + 1e-18 && basis_[static_cast<std::size_t>(k)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = k;
          ratio = q;
        }
      }
    }
    if (leave < 0) throw NumericError("extremal_solver", "solve_extremal", "unbounded dual step", best);
    degenerate = ratio <= 1e-16 ? degenerate + 1 : 0;
    const auto old = basis_;
    basis_[static_cast<std::size_t>(leave)] = enter;
    if (!factor()) {
      basis_ = old;
      factor();
      throw NumericError("extremal_solver", "solve_extremal", "singular basis", best);
    }
  }
}

}  // namespace vk
