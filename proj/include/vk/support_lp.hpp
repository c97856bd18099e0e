// Finite-direction relaxation of the inscribed-ellipse program.
//
//   maximize rho  subject to  a.u_k + rho e_k <= h_k
//
// solved through its 3-row dual (min sum l_k h_k, sum l_k u_k = 0,
// sum l_k e_k = 1, l >= 0) by a revised simplex method. Columns can be
// appended between solves; the basis is kept.
#pragma once

#include "vk/types.hpp"

#include <array>
#include <vector>

namespace vk {

struct SupportLpResult {
  Vec2 a = Vec2::Zero();
  double rho = 0.0;
  std::array<int, 3> basis{};
  std::array<double, 3> weights{};
  int pivots = 0;
};

class SupportLp {
 public:
  void reserve(std::size_t n) { cols_.reserve(n); }
  void add(const Vec2& u, double e, double h) { cols_.push_back({u[0], u[1], e, h}); }
  std::size_t size() const { return cols_.size(); }

  /// Throws NumericError if the start basis is infeasible. Stops at the current
  /// vertex after max_pivots (only reachable through rounding-level cycling).
  SupportLpResult solve(int max_pivots = 500);

 private:
  struct Col {
    double ux, uy, e, h;
  };
  bool factor();

  std::vector<Col> cols_;
  std::array<int, 3> basis_{-1, -1, -1};
  Eigen::Matrix3d binv_;
  Eigen::Vector3d lambda_;
};

}  // namespace vk
