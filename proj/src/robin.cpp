#include "vk/robin.hpp"

#include "vk/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <numeric>

namespace vk {

namespace {

cplx hdot(const ComplexPoint2& x, const ComplexPoint2& y) { return x.z1 * std::conj(y.z1) + x.z2 * std::conj(y.z2); }

ComplexPoint2 real_point(const Vec2& v) { return ComplexPoint2::from_real(v); }

// Image of e^{i theta} on the leaf: a + 2 Re(b e^{i theta}).
Vec2 trace_point(const Vec2& a, const ComplexPoint2& b, double theta) {
  const cplx u = std::polar(1.0, theta);
  return a + 2.0 * Vec2((b.z1 * u).real(), (b.z2 * u).real());
}

// Leaf coefficient with b_1 >= 0 for the node at sphere angles (t, p).
void solve_node(const ConvexBody& body, double t, double p, InscribedEllipse& e, Vec2& a, ComplexPoint2& b) {
  if (t <= 0.5 * kPi) {
    e = solve_extremal(body, shape_from_c(std::polar(std::tan(0.5 * t), p), Chart::first));
    b = e.b;
  } else {
    e = solve_extremal(body, shape_from_c(std::polar(1.0 / std::tan(0.5 * t), -p), Chart::second));
    b = std::polar(1.0, p) * e.b;
  }
  a = e.a;
}

}  // namespace

double robin_value(const ExtremalCache& leaves, const ComplexPoint2& w) {
  if (w.norm() == 0.0) throw DomainError("robin_ma", "robin_value", "w = 0");
  const bool first = std::abs(w.z2) <= kChartSwitch * std::abs(w.z1);
  const cplx c = first ? w.z2 / w.z1 : w.z1 / w.z2;
  const InscribedEllipse e = leaves.get(shape_from_c(c, first ? Chart::first : Chart::second));
  return first ? std::log(std::abs(w.z1) / e.rho) : std::log(std::abs(w.z2) / e.rho);
}

double robin_limit(const ExtremalCache& leaves, const ComplexPoint2& z, const std::vector<double>& lambdas) {
  if (z.norm() == 0.0) throw DomainError("robin_ma", "robin_limit", "z = 0");
  if (lambdas.empty()) throw ConfigError("robin_ma", "robin_limit", "empty schedule");
  // Neville extrapolation in h = 1 / lambda to h = 0.
  const std::size_t m = lambdas.size();
  std::vector<double> h(m), p(m);
  for (std::size_t k = 0; k < m; ++k) {
    h[k] = 1.0 / lambdas[k];
    p[k] = eval_V(leaves, cplx(lambdas[k]) * z).value - std::log(lambdas[k]);
  }
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t k = 0; k + level < m; ++k)
      p[k] = (h[k] * p[k + 1] - h[k + level] * p[k]) / (h[k] - h[k + level]);
  return p[0];
}

ComplexPoint2 robin_leafwise(const ConvexBody& body, const ShapeParam& shape) {
  return leaf_coefficient(solve_extremal(body, shape));
}

ComplexPoint2 robin_exp_map(const ExtremalCache& leaves, const ComplexPoint2& b, cplx zeta) {
  if (std::abs(zeta) < 1.0) throw DomainError("robin_ma", "robin_exp_map", "|zeta| < 1");
  const bool first = std::abs(b.z2) <= kChartSwitch * std::abs(b.z1);
  const cplx c = first ? b.z2 / b.z1 : b.z1 / b.z2;
  const InscribedEllipse e = leaves.get(shape_from_c(c, first ? Chart::first : Chart::second));
  const cplx bk = first ? b.z1 : b.z2;
  const cplx ek = first ? e.b.z1 : e.b.z2;
  if (std::abs(std::abs(bk) / std::abs(ek) - 1.0) > 1e-6)
    throw DomainError("robin_ma", "robin_exp_map", "b is not on the indicatrix boundary");
  return real_point(e.a) + b * zeta + b.conj() * (1.0 / zeta);
}

LeafSphere build_leaf_sphere(const ConvexBody& body, int n, Exec exec) {
  if (n < 4 || n % 2 != 0) throw ConfigError("robin_ma", "build_leaf_sphere", "resolution must be even and >= 4");
  LeafSphere s;
  s.n = n;
  const std::size_t total = static_cast<std::size_t>(n) * n;
  s.leaves.resize(total);
  s.a.resize(total);
  s.b.resize(total);
  s.ok.assign(total, 1);
  for_each_index(static_cast<std::int64_t>(total), exec, [&](std::int64_t k) {
    const auto idx = static_cast<std::size_t>(k);
    const int i = static_cast<int>(k / n), j = static_cast<int>(k % n);
    try {
      solve_node(body, s.row_angle(i), s.col_angle(j), s.leaves[idx], s.a[idx], s.b[idx]);
    } catch (const Error&) {
      s.ok[idx] = 0;
    }
  });
  s.dropped = static_cast<int>(std::count(s.ok.begin(), s.ok.end(), 0));
  if (s.dropped > static_cast<int>(total / 100))
    throw NumericError("robin_ma", "build_leaf_sphere", std::to_string(s.dropped) + " of " +
                       std::to_string(total) + " extremals failed", static_cast<double>(s.dropped));
  return s;
}

BoundaryMeasure ma_boundary_measure(LeafSphere sphere, int theta_samples) {
  if (theta_samples < 4) throw ConfigError("robin_ma", "ma_boundary_measure", "theta_samples must be >= 4");
  const int n = sphere.n;
  const double dt = kPi / n, dp = kTwoPi / n;
  std::vector<double> u(sphere.b.size());
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::log(sphere.b[k].norm());

  // mu = omega_FS - dd^c log|b|, finite volumes on the round sphere.
  BoundaryMeasure m;
  m.theta_samples = theta_samples;
  m.weights.assign(u.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const double t = sphere.row_angle(i);
    const double area = 0.5 * (std::cos(t - 0.5 * dt) - std::cos(t + 0.5 * dt)) * dp;
    for (int j = 0; j < n; ++j) {
      const std::size_t k = sphere.index(i, j);
      if (!sphere.ok[k]) continue;
      double flux = 0.0;
      const auto edge = [&](std::size_t q, double w) {
        if (sphere.ok[q]) flux += w * (u[q] - u[k]);
      };
      if (i > 0) edge(sphere.index(i - 1, j), std::sin(t - 0.5 * dt) * dp / dt);
      if (i < n - 1) edge(sphere.index(i + 1, j), std::sin(t + 0.5 * dt) * dp / dt);
      const double side = dt / (std::sin(t) * dp);
      edge(sphere.index(i, (j + 1) % n), side);
      edge(sphere.index(i, (j + n - 1) % n), side);
      m.weights[k] = kTwoPi * (area - flux);
    }
  }
  m.total = std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
  m.min_weight = *std::min_element(m.weights.begin(), m.weights.end());
  m.sphere = std::move(sphere);
  return m;
}

BoundaryMeasure ma_boundary_measure(const ConvexBody& body, int resolution, int theta_samples, Exec exec) {
  return ma_boundary_measure(build_leaf_sphere(body, resolution, exec), theta_samples);
}

std::vector<RobinSample> BoundaryMeasure::samples() const {
  std::vector<RobinSample> out;
  out.reserve(weights.size() * static_cast<std::size_t>(theta_samples));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!sphere.ok[k]) continue;
    for (int q = 0; q < theta_samples; ++q) {
      RobinSample s;
      s.shape = sphere.leaves[k].shape;
      s.theta = kTwoPi * q / theta_samples;
      s.b = sphere.b[k];
      s.boundary_point = std::polar(1.0, s.theta) * s.b;
      s.image = trace_point(sphere.a[k], s.b, s.theta);
      s.weight = weights[k] / theta_samples;
      out.push_back(s);
    }
  }
  return out;
}

double BoundaryMeasure::integrate(const PlaneFn& phi) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!sphere.ok[k]) continue;
    double acc = 0.0;
    for (int q = 0; q < theta_samples; ++q) acc += phi(trace_point(sphere.a[k], sphere.b[k], kTwoPi * q / theta_samples));
    sum += weights[k] * acc / theta_samples;
  }
  return sum;
}

namespace {

// Node data on rows -2 .. n+1, continued across the poles.
struct Extended {
  const LeafSphere& s;
  int n;
  Vec2 a(int i, int j) const { return s.a[map(i, j)]; }
  ComplexPoint2 b(int i, int j) const {
    const ComplexPoint2 v = s.b[map(i, j)];
    return i >= n ? cplx(-1.0) * v : v;
  }
  std::size_t map(int i, int j) const {
    if (i < 0) return s.index(-1 - i, (j + n / 2) % n);
    if (i >= n) return s.index(2 * n - 1 - i, (j + n / 2) % n);
    return s.index(i, ((j % n) + n) % n);
  }
};

// (alpha_t, alpha_p): d^cV on the coordinate directions of the two sphere angles.
std::array<double, 2> dc_components(const ComplexPoint2& b, const std::array<Vec2, 2>& da,
                                    const std::array<ComplexPoint2, 2>& db, cplx zeta) {
  const cplx zi = 1.0 / zeta;
  const ComplexPoint2 tan = b * zeta - b.conj() * zi;
  const double tn = tan.norm();
  const ComplexPoint2 nrm(-std::conj(tan.z2) / tn, std::conj(tan.z1) / tn);
  std::array<ComplexPoint2, 2> p;
  std::array<cplx, 2> pn;
  for (int k = 0; k < 2; ++k) {
    p[static_cast<std::size_t>(k)] = real_point(da[static_cast<std::size_t>(k)]) + db[static_cast<std::size_t>(k)] * zeta +
                                     db[static_cast<std::size_t>(k)].conj() * zi;
    pn[static_cast<std::size_t>(k)] = hdot(p[static_cast<std::size_t>(k)], nrm);
  }
  Eigen::Matrix2d m;
  m << pn[0].real(), pn[1].real(), pn[0].imag(), pn[1].imag();
  const auto lu = m.fullPivLu();
  std::array<double, 2> out{};
  for (int k = 0; k < 2; ++k) {
    const cplx target = cplx(0.0, 1.0) * pn[static_cast<std::size_t>(k)];
    const Eigen::Vector2d w = lu.solve(Eigen::Vector2d(target.real(), target.imag()));
    const ComplexPoint2 rest = cplx(0.0, 1.0) * p[static_cast<std::size_t>(k)] - cplx(w[0]) * p[0] - cplx(w[1]) * p[1];
    out[static_cast<std::size_t>(k)] = -(hdot(rest, tan) / (tn * tn)).real();
  }
  return out;
}

}  // namespace

double levelset_flux(const LeafSphere& sphere, const PlaneFn& phi, double lambda, int theta_samples, Exec exec) {
  if (!(lambda > 1.0)) throw ConfigError("robin_ma", "levelset_flux", "lambda must exceed 1");
  if (theta_samples < 4) throw ConfigError("robin_ma", "levelset_flux", "theta_samples must be >= 4");
  const int n = sphere.n;
  const double dt = kPi / n, dp = kTwoPi / n, dth = kTwoPi / theta_samples;
  const Extended ext{sphere, n};
  const int rows = n + 2;  // rows -1 .. n

  // First derivatives of a and b on rows -1 .. n.
  const std::size_t cells = static_cast<std::size_t>(rows) * n;
  std::vector<std::array<Vec2, 2>> da(cells);
  std::vector<std::array<ComplexPoint2, 2>> db(cells);
  const auto slot = [&](int i, int j) { return static_cast<std::size_t>((i + 1) * n + ((j % n) + n) % n); };
  for (int i = -1; i <= n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t k = slot(i, j);
      da[k][0] = (ext.a(i + 1, j) - ext.a(i - 1, j)) / (2.0 * dt);
      da[k][1] = (ext.a(i, j + 1) - ext.a(i, j - 1)) / (2.0 * dp);
      db[k][0] = cplx(1.0 / (2.0 * dt)) * (ext.b(i + 1, j) - ext.b(i - 1, j));
      db[k][1] = cplx(1.0 / (2.0 * dp)) * (ext.b(i, j + 1) - ext.b(i, j - 1));
    }

  std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);
  for_each_index(n, exec, [&](std::int64_t ii) {
    const int i = static_cast<int>(ii);
    std::vector<std::array<double, 2>> alpha(static_cast<std::size_t>(3 * n));
    double acc = 0.0;
    for (int q = 0; q < theta_samples; ++q) {
      const double th = dth * q;
      const cplx zeta = std::polar(lambda, th);
      const auto comp = [&](int r, int j, cplx z) {
        const std::size_t k = slot(r, j);
        return dc_components(ext.b(r, j), da[k], db[k], z);
      };
      for (int r = -1; r <= 1; ++r)
        for (int j = 0; j < n; ++j) alpha[static_cast<std::size_t>((r + 1) * n + j)] = comp(i + r, j, zeta);
      constexpr double h = 1e-5;
      const cplx zp = std::polar(lambda, th + h), zm = std::polar(lambda, th - h);
      for (int j = 0; j < n; ++j) {
        const std::size_t k = sphere.index(i, j);
        if (!sphere.ok[k]) continue;
        const auto& c = alpha[static_cast<std::size_t>(n + j)];
        const double curl = (alpha[static_cast<std::size_t>(2 * n + j)][1] - alpha[static_cast<std::size_t>(j)][1]) / (2.0 * dt) -
                            (alpha[static_cast<std::size_t>(n + (j + 1) % n)][0] -
                             alpha[static_cast<std::size_t>(n + (j + n - 1) % n)][0]) / (2.0 * dp);
        const auto ap = comp(i, j, zp), am = comp(i, j, zm);
        const double d0 = (ap[0] - am[0]) / (2.0 * h), d1 = (ap[1] - am[1]) / (2.0 * h);
        const double form = curl - c[0] * d1 + c[1] * d0;
        acc += phi(trace_point(sphere.a[k], sphere.b[k], th)) * form;
      }
    }
    row_sum[static_cast<std::size_t>(i)] = acc * dth * dt * dp;
  });
  return std::accumulate(row_sum.begin(), row_sum.end(), 0.0);
}

double levelset_flux(const ConvexBody& body, const PlaneFn& phi, double lambda, int resolution, int theta_samples,
                     Exec exec) {
  return levelset_flux(build_leaf_sphere(body, resolution, exec), phi, lambda, theta_samples, exec);
}

PushforwardResult pushforward_integral(const ConvexBody& body, const PlaneFn& phi, int resolution, double lambda,
                                       int theta_samples, Exec exec) {
  BoundaryMeasure m = ma_boundary_measure(body, resolution, theta_samples, exec);
  PushforwardResult r;
  r.rhs = m.integrate(phi);
  r.lhs = levelset_flux(m.sphere, phi, lambda, theta_samples, exec);
  r.mass = m.total;
  r.relative_gap = std::abs(r.lhs - r.rhs) / (std::abs(r.lhs) + 1e-12);
  return r;
}

PlaneFn named_test_function(const std::string& name) {
  if (name == "1") return [](const Vec2&) { return 1.0; };
  if (name == "x") return [](const Vec2& p) { return p[0]; };
  if (name == "y") return [](const Vec2& p) { return p[1]; };
  if (name == "x2") return [](const Vec2& p) { return p[0] * p[0]; };
  if (name == "y2") return [](const Vec2& p) { return p[1] * p[1]; };
  if (name == "xy") return [](const Vec2& p) { return p[0] * p[1]; };
  if (name == "x2+y2") return [](const Vec2& p) { return p.squaredNorm(); };
  throw ConfigError("robin_ma", "named_test_function", "unknown test function '" + name + "'");
}

double disk_ma_density(const Vec2& x, double step, int directions) {
  const double r2 = x.squaredNorm();
  if (r2 >= 1.0) return 0.0;
  // V(x + i s y) = s g(y) + O(s^3); Richardson in s removes the cubic term.
  const double s = step * std::sqrt(1.0 - r2);
  const auto cone = [&](double ang) {
    const Vec2 y = unit_vector(ang);
    const auto v = [&](double t) {
      return V_disk(ComplexPoint2(cplx(x[0], t * y[0]), cplx(x[1], t * y[1]))) / t;
    };
    return (4.0 * v(0.5 * s) - v(s)) / 3.0;
  };
  // Area of the convex set with support function g: 1/2 int (g^2 - g'^2).
  // The cone sharpens like (1 - |x|^2)^{-1/2} toward the rim.
  directions = std::max(directions, static_cast<int>(64.0 / std::sqrt(1.0 - r2)));
  const double dphi = kTwoPi / directions, h = 1e-3 * std::sqrt(1.0 - r2);
  double area = 0.0;
  for (int k = 0; k < directions; ++k) {
    const double ang = k * dphi;
    const double g = cone(ang), gp = (cone(ang + h) - cone(ang - h)) / (2.0 * h);
    area += 0.5 * (g * g - gp * gp) * dphi;
  }
  return 2.0 * area;
}

double disk_ma_integral(const PlaneFn& phi, int n) {
  if (n < 2) throw ConfigError("robin_ma", "disk_ma_integral", "grid must be at least 2");
  // r = sin t removes the inverse square root at the rim.
  const double dt = 0.5 * kPi / n, dw = kTwoPi / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * dt, r = std::sin(t);
    for (int j = 0; j < n; ++j) {
      const Vec2 x = r * unit_vector((j + 0.5) * dw);
      sum += phi(x) * disk_ma_density(x) * r * std::cos(t) * dt * dw;
    }
  }
  return sum;
}

std::vector<RobinSample> indicatrix(const ConvexBody& body, int resolution, int theta_samples, Exec exec) {
  const LeafSphere s = build_leaf_sphere(body, resolution, exec);
  std::vector<RobinSample> out;
  for (std::size_t k = 0; k < s.b.size(); ++k) {
    if (!s.ok[k]) continue;
    for (int q = 0; q < theta_samples; ++q) {
      RobinSample r;
      r.shape = s.leaves[k].shape;
      r.theta = kTwoPi * q / theta_samples;
      r.b = s.b[k];
      r.boundary_point = std::polar(1.0, r.theta) * r.b;
      r.image = trace_point(s.a[k], r.b, r.theta);
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace vk
