// V_K at points of C^2 by locating the extremal leaf through the point.
#pragma once

#include "vk/extremal_solver.hpp"
#include "vk/parallel.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace vk {

struct EvalOptions {
  double fd_step = 1e-6;
  int continuation_steps = 8;
  double continuation_start = 4.0;
  int max_newton = 40;
  int max_halvings = 30;
  double tikhonov = 1e-10;
  double accept_residual = 1e-8;   // relative to 1 + |z|, for the returned solution
  double target_residual = 1e-13;  // relative to 1 + |z|
  int fallback_grid = 64;
};

struct LeafSolution {
  ShapeParam shape;
  cplx zeta{1.0, 0.0};
  double value = 0.0;  // log |zeta|
  double residual = 0.0;
  InscribedEllipse ellipse;
  bool on_body = false;
  bool used_fallback = false;
  int newton_iterations = 0;
};

/// Real point of K (imaginary parts below tol).
bool in_body(const ConvexBody& body, const ComplexPoint2& z, double tol = 1e-12);

/// DomainError for non-finite z or |z| > 1e150.
LeafSolution eval_V(const ExtremalCache& leaves, const ComplexPoint2& z, const EvalOptions& opts = {});
LeafSolution eval_V(const ConvexBody& body, const ComplexPoint2& z, const EvalOptions& opts = {});

/// Newton from a nearby solution, skipping continuation. Falls back to eval_V on failure.
LeafSolution eval_V_from(const ExtremalCache& leaves, const ComplexPoint2& z, const LeafSolution& hint,
                         const EvalOptions& opts = {});

/// Extremal leaves on an n x n grid of (gamma, psi) for both orientations.
struct LeafGrid {
  int n = 0;
  std::vector<InscribedEllipse> leaves;  // index (orientation, i_gamma, j_psi)
  const InscribedEllipse& at(int orient, int i, int j) const {
    return leaves[static_cast<std::size_t>((orient * n + i) * n + j)];
  }
};

LeafGrid build_leaf_grid(const ConvexBody& body, int n, Exec exec = Exec::parallel);

/// zeta minimizing |F(zeta) - z| on one leaf, with that distance.
std::pair<cplx, double> closest_leaf_parameter(const InscribedEllipse& e, const ComplexPoint2& z);

struct BruteForceValue {
  double value = std::numeric_limits<double>::infinity();
  double error_bound = std::numeric_limits<double>::infinity();
  double distance = std::numeric_limits<double>::infinity();
  bool found = false;
  ShapeParam shape;
  cplx zeta{};
};

/// Smallest |log|zeta|| over grid leaves passing (nearly) through z.
BruteForceValue eval_V_bruteforce(const LeafGrid& grid, const ComplexPoint2& z);
BruteForceValue eval_V_bruteforce(const ConvexBody& body, const ComplexPoint2& z, int grid);

struct LevelSample {
  ShapeParam shape;
  double theta = 0.0;
  ComplexPoint2 z;
};

/// Points F_c(lambda e^{i theta}) for c on an n x n shape grid (both orientations) and n angles.
std::vector<LevelSample> level_set(const ConvexBody& body, double lambda, int resolution,
                                   Exec exec = Exec::parallel);

}  // namespace vk
