#include "vk/leaf_eval.hpp"

#include "vk/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace vk {

namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

struct State {
  Chart chart = Chart::first;
  cplx c{};
  cplx zeta{1.0, 0.0};
};

// |zeta| >= 1 via the conjugate leaf, then the canonical chart.
State normalize(State s) {
  if (std::abs(s.zeta) < 1.0) {
    s.c = std::conj(s.c);
    s.zeta = 1.0 / s.zeta;
  }
  const double r = std::abs(s.c);
  const bool swap = (s.chart == Chart::first && r > kChartSwitch) || (s.chart == Chart::second && r >= 1.0);
  if (swap) {
    const cplx phase = s.c / r;
    s.chart = s.chart == Chart::first ? Chart::second : Chart::first;
    s.c = 1.0 / s.c;
    s.zeta *= phase;
  }
  return s;
}

Vec4 to_vec(const ComplexPoint2& w) { return {w.z1.real(), w.z1.imag(), w.z2.real(), w.z2.imag()}; }

ComplexPoint2 leaf_point(const InscribedEllipse& e, cplx zeta) { return ellipse_complex_point(e, zeta); }

// Parameter on coordinate k of the leaf: |b_k| (xi + 1/xi) = z_k - a_k with zeta = xi conj(b_k)/|b_k|.
cplx eliminate(const InscribedEllipse& e, const ComplexPoint2& z, int k) {
  const cplx bk = e.b[k];
  const double m = std::abs(bk);
  const cplx xi = joukowski_inverse((z[k] - e.a[k]) / (2.0 * m));
  return xi * std::conj(bk) / m;
}

class Newton {
 public:
  Newton(const ExtremalCache& leaves, const ComplexPoint2& z, const EvalOptions& opts)
      : leaves_(leaves), z_(z), opts_(opts) {}

  InscribedEllipse leaf(const State& s) const { return leaves_.get(shape_from_c(s.c, s.chart)); }

  Vec4 residual(const State& s, InscribedEllipse* out = nullptr) const {
    const InscribedEllipse e = leaf(s);
    if (out) *out = e;
    return to_vec(leaf_point(e, s.zeta) - z_);
  }

  // Runs until the residual reaches tol; returns the best state and its residual norm.
  std::pair<State, double> run(State s, double tol, int* iterations) const {
    s = normalize(s);
    InscribedEllipse e;
    Vec4 r = residual(s, &e);
    double rn = r.norm();
    for (int it = 0; it < opts_.max_newton && rn > tol; ++it) {
      if (iterations) ++*iterations;
      Mat4 jac;
      const double h = opts_.fd_step * std::max(1.0, std::abs(s.c));
      for (int k = 0; k < 2; ++k) {
        State p = s;
        p.c += k == 0 ? cplx(h, 0.0) : cplx(0.0, h);
        jac.col(k) = (residual(p) - r) / h;
      }
      const cplx zi = 1.0 / s.zeta;
      const ComplexPoint2 d(e.b.z1 - std::conj(e.b.z1) * zi * zi, e.b.z2 - std::conj(e.b.z2) * zi * zi);
      jac.col(2) = to_vec(d);
      jac.col(3) = to_vec(cplx(0.0, 1.0) * d);

      // columns scale like |zeta| (c) and 1 (zeta); equilibrate before regularizing
      Vec4 scale;
      for (int k = 0; k < 4; ++k) scale[k] = std::max(jac.col(k).norm(), 1e-300);
      const Mat4 js = jac * scale.cwiseInverse().asDiagonal();
      const Mat4 jtj = js.transpose() * js;
      const double mu = opts_.tikhonov * std::max(1.0, jtj.trace());
      Vec4 step = -(jtj + mu * Mat4::Identity()).ldlt().solve(js.transpose() * r);
      step = step.cwiseQuotient(scale);
      const double cap = 0.5 * (1.0 + std::abs(s.c));
      const double cstep = std::hypot(step[0], step[1]);
      if (cstep > cap) step *= cap / cstep;

      bool moved = false;
      double t = 1.0;
      for (int k = 0; k <= opts_.max_halvings; ++k, t *= 0.5) {
        State trial = s;
        trial.c += t * cplx(step[0], step[1]);
        trial.zeta += t * cplx(step[2], step[3]);
        if (trial.zeta == cplx(0.0)) continue;
        trial = normalize(trial);
        InscribedEllipse et;
        const Vec4 rt = residual(trial, &et);
        const double rtn = rt.norm();
        if (rtn < rn * (1.0 - 1e-4 * t)) {
          s = trial;
          e = et;
          r = rt;
          rn = rtn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    return {s, rn};
  }

 private:
  const ExtremalCache& leaves_;
  ComplexPoint2 z_;
  EvalOptions opts_;
};

State asymptotic_guess(const ExtremalCache& leaves, const ComplexPoint2& z) {
  State s;
  if (std::abs(z.z2) <= kChartSwitch * std::abs(z.z1)) {
    s.chart = Chart::first;
    s.c = z.z2 / z.z1;
  } else {
    s.chart = Chart::second;
    s.c = z.z1 / z.z2;
  }
  const InscribedEllipse e = leaves.get(shape_from_c(s.c, s.chart));
  s.zeta = eliminate(e, z, s.chart == Chart::first ? 0 : 1);
  return s;
}

LeafSolution finish(const ExtremalCache& leaves, const State& s, double residual, int iterations, bool fallback) {
  LeafSolution out;
  out.shape = shape_from_c(s.c, s.chart);
  out.ellipse = leaves.get(out.shape);
  out.zeta = s.zeta;
  out.value = std::log(std::abs(s.zeta));
  out.residual = residual;
  out.newton_iterations = iterations;
  out.used_fallback = fallback;
  return out;
}

// Shapes of the fallback grid; both orientations.
ShapeParam grid_shape(int n, int orient, int i, int j) {
  return c_from_shape((i + 0.5) / n, kPi * j / n, orient == 0 ? 1 : -1);
}

}  // namespace

bool in_body(const ConvexBody& body, const ComplexPoint2& z, double tol) {
  return z.is_real(tol) && body.contains(z.real(), tol);
}

std::pair<cplx, double> closest_leaf_parameter(const InscribedEllipse& e, const ComplexPoint2& z) {
  cplx best{1.0, 0.0};
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k) {
    if (std::abs(e.b[k]) < 1e-14) continue;
    cplx zeta = eliminate(e, z, k);
    // Gauss-Newton on |F(zeta) - z|^2.
    for (int it = 0; it < 8; ++it) {
      const Vec4 r = to_vec(leaf_point(e, zeta) - z);
      const cplx zi = 1.0 / zeta;
      const ComplexPoint2 d(e.b.z1 - std::conj(e.b.z1) * zi * zi, e.b.z2 - std::conj(e.b.z2) * zi * zi);
      Eigen::Matrix<double, 4, 2> j;
      j.col(0) = to_vec(d);
      j.col(1) = to_vec(cplx(0.0, 1.0) * d);
      const Eigen::Vector2d step = -(j.transpose() * j + 1e-14 * Eigen::Matrix2d::Identity()).ldlt().solve(j.transpose() * r);
      const cplx next = zeta + cplx(step[0], step[1]);
      if (next == cplx(0.0) || (leaf_point(e, next) - z).norm() >= r.norm()) break;
      zeta = next;
    }
    const double d = (leaf_point(e, zeta) - z).norm();
    if (d < best_d) {
      best_d = d;
      best = zeta;
    }
  }
  return {best, best_d};
}

LeafSolution eval_V_from(const ExtremalCache& leaves, const ComplexPoint2& z, const LeafSolution& hint,
                         const EvalOptions& opts) {
  if (in_body(leaves.body(), z)) return eval_V(leaves, z, opts);
  const Newton newton(leaves, z, opts);
  const double tol = opts.target_residual * (1.0 + z.norm());
  int iters = 0;
  auto [s, rn] = newton.run({hint.shape.chart, hint.shape.c, hint.zeta}, tol, &iters);
  if (rn <= opts.accept_residual * (1.0 + z.norm())) return finish(leaves, s, rn, iters, false);
  return eval_V(leaves, z, opts);
}

LeafSolution eval_V(const ExtremalCache& leaves, const ComplexPoint2& z, const EvalOptions& opts) {
  if (!z.is_finite() || !(z.norm() <= 1e150))
    throw DomainError("leaf_eval", "eval_V", "point is not finite or |z| > 1e150");
  if (in_body(leaves.body(), z)) {
    LeafSolution out;
    out.on_body = true;
    out.value = 0.0;
    return out;
  }
  const Newton base(leaves, z, opts);
  const double scale = 1.0 + z.norm();
  int iters = 0;

  // Continuation along t z, t from continuation_start down to 1.
  bool ok = true;
  const int steps = std::max(1, opts.continuation_steps);
  State s;
  double rn = 0.0;
  for (int k = 0; k <= steps && ok; ++k) {
    const double t = opts.continuation_start - (opts.continuation_start - 1.0) * k / steps;
    const ComplexPoint2 zt = cplx(t) * z;
    const Newton newton(leaves, zt, opts);
    if (k == 0) s = asymptotic_guess(leaves, zt);
    const bool last = k == steps;
    const double tol = (last ? opts.target_residual : 1e-9) * t * scale;
    std::tie(s, rn) = newton.run(s, tol, &iters);
    ok = rn <= (last ? opts.accept_residual * scale : 1e-6 * t * scale);
  }
  if (ok) return finish(leaves, s, rn, iters, false);

  // Coarse grid over the shape chart, then Newton from the closest leaf.
  const int n = opts.fallback_grid;
  double best_d = std::numeric_limits<double>::infinity();
  State best;
  for (int o = 0; o < 2; ++o)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ShapeParam sh = grid_shape(n, o, i, j);
        const InscribedEllipse e = leaves.get(sh);
        auto [zeta, d] = closest_leaf_parameter(e, z);
        if (d < best_d) {
          best_d = d;
          best = {sh.chart, sh.c, zeta};
        }
      }
  std::tie(s, rn) = base.run(best, opts.target_residual * scale, &iters);
  if (rn <= opts.accept_residual * scale) return finish(leaves, s, rn, iters, true);
  throw NumericError("leaf_eval", "eval_V", "leaf inversion did not converge", rn);
}

LeafSolution eval_V(const ConvexBody& body, const ComplexPoint2& z, const EvalOptions& opts) {
  const ExtremalCache leaves(body, {}, 4096);
  return eval_V(leaves, z, opts);
}

LeafGrid build_leaf_grid(const ConvexBody& body, int n, Exec exec) {
  if (n < 2) throw ConfigError("leaf_eval", "build_leaf_grid", "grid must be at least 2");
  LeafGrid g;
  g.n = n;
  g.leaves.resize(static_cast<std::size_t>(2 * n * n));
  for_each_index(2LL * n * n, exec, [&](std::int64_t idx) {
    const int o = static_cast<int>(idx / (n * n));
    const int i = static_cast<int>(idx / n % n);
    const int j = static_cast<int>(idx % n);
    g.leaves[static_cast<std::size_t>(idx)] = solve_extremal(body, grid_shape(n, o, i, j));
  });
  return g;
}

BruteForceValue eval_V_bruteforce(const LeafGrid& grid, const ComplexPoint2& z) {
  const int n = grid.n;
  std::vector<double> dist(grid.leaves.size()), val(grid.leaves.size());
  std::vector<cplx> zetas(grid.leaves.size());
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.leaves.size(); ++k) {
    auto [zeta, d] = closest_leaf_parameter(grid.leaves[k], z);
    dist[k] = d;
    zetas[k] = zeta;
    val[k] = std::abs(std::log(std::abs(zeta)));
    dmin = std::min(dmin, d);
  }
  BruteForceValue out;
  if (!std::isfinite(dmin)) return out;
  const double admit = 2.0 * dmin + 1e-12;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < dist.size(); ++k)
    if (dist[k] <= admit && val[k] < out.value) {
      out.value = val[k];
      arg = k;
    }
  out.found = true;
  out.distance = dist[arg];
  out.shape = grid.leaves[arg].shape;
  out.zeta = zetas[arg];

  // Spread over the neighbouring cells bounds the grid error.
  const int o = static_cast<int>(arg) / (n * n), i = static_cast<int>(arg) / n % n, j = static_cast<int>(arg) % n;
  double spread = 0.0;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      const int ii = i + di;
      if (ii < 0 || ii >= n) continue;
      const int jj = (j + dj + n) % n;
      spread = std::max(spread, std::abs(val[static_cast<std::size_t>((o * n + ii) * n + jj)] - out.value));
    }
  out.error_bound = spread;
  return out;
}

BruteForceValue eval_V_bruteforce(const ConvexBody& body, const ComplexPoint2& z, int grid) {
  return eval_V_bruteforce(build_leaf_grid(body, grid), z);
}

std::vector<LevelSample> level_set(const ConvexBody& body, double lambda, int resolution, Exec exec) {
  if (!(lambda > 1.0)) throw ConfigError("leaf_eval", "level_set", "lambda must exceed 1");
  if (resolution < 2) throw ConfigError("leaf_eval", "level_set", "resolution must be at least 2");
  const int n = resolution;
  const LeafGrid g = build_leaf_grid(body, n, exec);
  std::vector<LevelSample> out(static_cast<std::size_t>(2 * n * n) * static_cast<std::size_t>(n));
  for_each_index(static_cast<std::int64_t>(g.leaves.size()), exec, [&](std::int64_t k) {
    const InscribedEllipse& e = g.leaves[static_cast<std::size_t>(k)];
    for (int m = 0; m < n; ++m) {
      const double th = kTwoPi * m / n;
      out[static_cast<std::size_t>(k) * n + m] = {e.shape, th, ellipse_complex_point(e, std::polar(lambda, th))};
    }
  });
  return out;
}

}  // namespace vk
