#include "vk/extremal_solver.hpp"
#include "vk/support_lp.hpp"

#include <Eigen/LU>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <mutex>

namespace vk {

namespace {

constexpr int kN = ConvexBody::kProbeCount;
constexpr double kDth = kTwoPi / kN;
constexpr double kInf = std::numeric_limits<double>::infinity();

// G = M M^T of the reference ellipse.
struct Gram {
  double g00, g01, g11;
  explicit Gram(const ShapeParam& s) {
    const double c = std::cos(s.psi), sn = std::sin(s.psi);
    const double a2 = s.alpha * s.alpha, b2 = s.beta * s.beta;
    g00 = a2 * c * c + b2 * sn * sn;
    g11 = a2 * sn * sn + b2 * c * c;
    g01 = (a2 - b2) * c * sn;
  }
  double support(const Vec2& u) const {
    return std::sqrt(std::max(0.0, u[0] * u[0] * g00 + 2.0 * u[0] * u[1] * g01 + u[1] * u[1] * g11));
  }
  Vec2 point(const Vec2& u) const {
    const double e = support(u);
    if (e == 0.0) return Vec2::Zero();
    return Vec2(g00 * u[0] + g01 * u[1], g01 * u[0] + g11 * u[1]) / e;
  }
};

std::pair<double, double> minimize(const auto& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  return boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits - 1, iters);
}

struct Problem {
  const ConvexBody& body;
  Gram g;
  Vec2 a;
  double rho;

  double gap(double th) const {
    const Vec2 u = unit_vector(th);
    return body.support(u) - a.dot(u) - rho * g.support(u);
  }
  double gap_probe(int k, const std::vector<double>& e) const {
    const Vec2& u = probe_direction(k);
    return body.probe_support(k) - a.dot(u) - rho * e[static_cast<std::size_t>(k)];
  }
  // d gap / d theta.
  double gap_slope(double th) const {
    const Vec2 u = unit_vector(th);
    return (body.support_point(u) - a - rho * g.point(u)).dot(perp(u));
  }
};

int wrap_index(int k) { return ((k % kN) + kN) % kN; }

std::vector<double> probe_ellipse_support(const Gram& g) {
  std::vector<double> e(kN);
  for (int k = 0; k < kN; ++k) e[static_cast<std::size_t>(k)] = g.support(probe_direction(k));
  return e;
}

// Discrete local minima of a periodic sequence below a threshold, at most cap of
// them (the smallest, returned in index order).
std::vector<int> local_minima(const std::vector<double>& v, double below, std::size_t cap = 24) {
  std::vector<int> out;
  for (int k = 0; k < kN; ++k) {
    const double x = v[static_cast<std::size_t>(k)];
    if (x < below && x <= v[static_cast<std::size_t>(wrap_index(k - 1))] &&
        x <= v[static_cast<std::size_t>(wrap_index(k + 1))])
      out.push_back(k);
  }
  if (out.size() > cap) {
    std::nth_element(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(cap), out.end(),
                     [&](int a, int b) { return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]; });
    out.resize(cap);
    std::sort(out.begin(), out.end());
  }
  return out;
}

// How far a probe-grid value can sit above the minimum between neighbours.
double grid_slack(const std::vector<double>& v) {
  double m = 0.0;
  for (int k = 0; k < kN; ++k)
    m = std::max(m, std::abs(v[static_cast<std::size_t>(wrap_index(k + 1))] - 2.0 * v[static_cast<std::size_t>(k)] +
                             v[static_cast<std::size_t>(wrap_index(k - 1))]));
  return m;
}

// Unit normal of the face on the side of u.
Vec2 face_normal(const FlatFace& f, const Vec2& u) {
  const Vec2 d = f.p1 - f.p0;
  const Vec2 n = Vec2(d[1], -d[0]).normalized();
  return n.dot(u) >= 0.0 ? n : Vec2(-n);
}

struct ActiveFace {
  Vec2 n;
  FlatFace face;
};

double slide_extent(const Problem& p, const Vec2& t, const std::vector<ActiveFace>& ends) {
  auto ratio = [&](double th) {
    const Vec2 u = unit_vector(th);
    return (p.body.support(u) - p.a.dot(u) - p.rho * p.g.support(u)) / t.dot(u);
  };
  constexpr double kEdge = 1e-3;
  std::vector<double> r(kN, kInf);
  for (int k = 0; k < kN; ++k) {
    const Vec2& u = probe_direction(k);
    const double tu = t.dot(u);
    if (tu > kEdge) r[static_cast<std::size_t>(k)] = (p.body.probe_support(k) - p.a.dot(u) - p.rho * p.g.support(u)) / tu;
  }
  double best = *std::min_element(r.begin(), r.end());
  for (int k : local_minima(r, kInf)) {
    double lo = kDth * (k - 1), hi = kDth * (k + 1);
    while (t.dot(unit_vector(lo)) < kEdge && lo < hi) lo += 0.125 * kDth;
    while (t.dot(unit_vector(hi)) < kEdge && hi > lo) hi -= 0.125 * kDth;
    if (hi - lo < 1e-9) continue;
    best = std::min(best, minimize(ratio, lo, hi).second);
  }
  // Near a contact normal n the ratio tends to the one-sided derivative of the slack along t.
  for (const ActiveFace& f : ends) {
    const double hx = std::max(f.face.p0.dot(t), f.face.p1.dot(t));
    best = std::min(best, hx - p.a.dot(t) - p.rho * p.g.point(f.n).dot(t));
  }
  return std::max(0.0, best);
}

std::optional<CenterSlide> slide_for(const Problem& p, const std::vector<double>& e) {
  if (!p.body.has_flat_faces()) return std::nullopt;
  std::vector<double> gap(kN);
  for (int k = 0; k < kN; ++k) gap[static_cast<std::size_t>(k)] = p.gap_probe(k, e);
  std::vector<ActiveFace> faces;
  for (int k = 0; k < kN; ++k) {
    if (gap[static_cast<std::size_t>(k)] >= 1e-6) continue;
    auto f = p.body.flat_face(probe_direction(k), 0.6 * kDth);
    if (!f) continue;
    const Vec2 n = face_normal(*f, probe_direction(k));
    if (p.gap(angle_of(n)) >= 1e-8) continue;
    if (std::none_of(faces.begin(), faces.end(), [&](const ActiveFace& m) { return m.n.dot(n) > 1.0 - 1e-12; }))
      faces.push_back({n, *f});
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      if (faces[i].n.dot(faces[j].n) < -1.0 + 1e-9) {
        CenterSlide s;
        s.t = perp(faces[i].n);
        const std::vector<ActiveFace> ends{faces[i], faces[j]};
        s.s_plus = slide_extent(p, s.t, ends);
        s.s_minus = slide_extent(p, -s.t, ends);
        return s;
      }
    }
  }
  return std::nullopt;
}

// Flat faces put a kink into the gap at the face normal, so its probe-grid minimum can sit
// up to slope * kDth above the true minimum. Returns the extra window to search.
double kink_window(const Problem& p) {
  if (!p.body.has_flat_faces()) return 0.0;
  double r = 0.0;
  for (int k = 0; k < kN; ++k) r = std::max(r, std::abs(p.body.probe_support(k)) + p.rho * p.g.support(probe_direction(k)));
  return 2.0 * (r + p.a.norm()) * kDth;
}

// Brent minimum of the gap near probe k, snapped to a face normal when one is there.
std::pair<double, double> refine_gap_min(const Problem& p, int k) {
  auto [th, gv] = minimize([&](double x) { return p.gap(x); }, kDth * (k - 1), kDth * (k + 1));
  if (auto f = p.body.flat_face(unit_vector(th), 1e-6)) {
    const double tf = angle_of(face_normal(*f, unit_vector(th)));
    const double gf = p.gap(tf);
    if (gf <= gv + 1e-12) return {tf, gf};
  }
  return {th, gv};
}

double worst_violation(const Problem& p) {
  std::vector<double> gap(kN);
  for (int k = 0; k < kN; ++k) {
    const Vec2& u = probe_direction(k);
    gap[static_cast<std::size_t>(k)] = p.body.probe_support(k) - p.a.dot(u) - p.rho * p.g.support(u);
  }
  double worst = -*std::min_element(gap.begin(), gap.end());
  for (int k : local_minima(gap, 1e-3 + kink_window(p))) worst = std::max(worst, -refine_gap_min(p, k).second);
  return worst;
}

struct Active {
  double th;
  bool flat;
};

// Clustered near-active normals of the current iterate; flat-face contacts snap to the face normal.
std::vector<Active> active_set(const Problem& p, const std::vector<double>& e, double window, bool& continuum) {
  std::vector<double> gap(kN);
  int small = 0, run = 0, longest = 0;
  for (int k = 0; k < 2 * kN; ++k) {
    const int kk = k % kN;
    if (k < kN) gap[static_cast<std::size_t>(kk)] = p.gap_probe(kk, e);
    if (gap[static_cast<std::size_t>(kk)] < 1e-7) {
      ++run;
      if (k < kN) ++small;
    } else {
      run = 0;
    }
    longest = std::max(longest, std::min(run, kN));
  }
  continuum = longest * kDth > 0.1 || small == kN;
  std::vector<Active> out;
  if (continuum) return out;
  for (int k : local_minima(gap, window + kink_window(p) + grid_slack(gap))) {
    const auto [th, gv] = refine_gap_min(p, k);
    if (gv > window) continue;
    Active a{wrap_angle(th), false};
    if (auto f = p.body.flat_face(unit_vector(a.th), 1e-3)) {
      a.th = wrap_angle(angle_of(face_normal(*f, unit_vector(a.th))));
      a.flat = true;
    }
    bool merged = false;
    for (auto& o : out) {
      if (angle_distance(o.th, a.th) <= 0.02) {
        merged = true;
        if (a.flat && !o.flat) o = a;
      }
    }
    if (!merged) out.push_back(a);
  }
  return out;
}

struct Fit {
  Vec2 a;
  double rho;
};

// Two antipodal contacts: rho = min over the normal angle of width / (2 e).
std::optional<Fit> fit_pair(const Problem& p, const Active& i, const Active& j) {
  auto width = [&](const Vec2& n) { return p.body.support(n) + p.body.support(-n); };
  auto finish = [&](const Vec2& n, std::optional<double> at) -> std::optional<Fit> {
    const Vec2 t = perp(n);
    const double en = p.g.support(n);
    if (!(en > 0.0)) return std::nullopt;
    const double rho = width(n) / (2.0 * en);
    const double an = 0.5 * (p.body.support(n) - p.body.support(-n));
    return Fit{an * n + (at ? *at : p.a.dot(t)) * t, rho};
  };
  if (i.flat && j.flat) return finish(unit_vector(i.th), std::nullopt);
  if (i.flat || j.flat) {
    const Active& f = i.flat ? i : j;
    const Vec2 ns = -unit_vector(f.th);
    const Vec2 t = perp(ns);
    const double rho = width(ns) / (2.0 * p.g.support(ns));
    return finish(ns, t.dot(p.body.support_point(ns) - rho * p.g.point(ns)));
  }
  auto slope = [&](double phi) {
    const Vec2 n = unit_vector(phi), t = perp(n);
    const double w1 = (p.body.support_point(n) - p.body.support_point(-n)).dot(t);
    return w1 * p.g.support(n) - width(n) * p.g.point(n).dot(t);
  };
  const double lo = i.th - 0.02, hi = i.th + 0.02;
  const double s0 = slope(lo), s1 = slope(hi);
  double phi;
  if (s0 < 0.0 && s1 > 0.0) {
    std::uintmax_t it = 200;
    auto br = boost::math::tools::toms748_solve(slope, lo, hi, s0, s1, boost::math::tools::eps_tolerance<double>(52), it);
    phi = 0.5 * (br.first + br.second);
  } else {
    phi = minimize([&](double x) { const Vec2 n = unit_vector(x); return width(n) / p.g.support(n); }, lo, hi).first;
  }
  const Vec2 n = unit_vector(phi), t = perp(n);
  return finish(n, 0.5 * t.dot(p.body.support_point(n) + p.body.support_point(-n)));
}

// Three contacts: alternate the 3x3 tangency system with stationarity of the gap.
std::optional<Fit> fit_triple(const Problem& p0, std::array<Active, 3> c) {
  Problem p = p0;
  for (int it = 0; it < 40; ++it) {
    Eigen::Matrix3d m;
    Eigen::Vector3d rhs;
    for (int i = 0; i < 3; ++i) {
      const Vec2 u = unit_vector(c[static_cast<std::size_t>(i)].th);
      m.row(i) << u[0], u[1], p.g.support(u);
      rhs[i] = p.body.support(u);
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::Vector3d x = lu.solve(rhs);
    const Eigen::Vector3d w = m.transpose().fullPivLu().solve(Eigen::Vector3d(0.0, 0.0, 1.0));
    if (w.minCoeff() < 0.0) return std::nullopt;
    p.a = Vec2(x[0], x[1]);
    p.rho = x[2];
    double moved = 0.0;
    for (auto& a : c) {
      if (a.flat) continue;
      const double lo = a.th - 0.01, hi = a.th + 0.01;
      const double s0 = p.gap_slope(lo), s1 = p.gap_slope(hi);
      double th;
      if (s0 < 0.0 && s1 > 0.0) {
        std::uintmax_t n = 200;
        auto br = boost::math::tools::toms748_solve([&](double y) { return p.gap_slope(y); }, lo, hi, s0, s1,
                                                    boost::math::tools::eps_tolerance<double>(52), n);
        th = 0.5 * (br.first + br.second);
      } else {
        th = minimize([&](double y) { return p.gap(y); }, lo, hi).first;
      }
      moved = std::max(moved, std::abs(th - a.th));
      a.th = th;
    }
    if (moved < 1e-15) break;
  }
  return Fit{p.a, p.rho};
}

// Replaces the relaxation optimum by the solution of the contact equations.
std::optional<Fit> polish(const Problem& p, const std::vector<double>& e, double tol, double relax_violation) {
  bool continuum = false;
  const std::vector<Active> act = active_set(p, e, 1e-5, continuum);
  if (continuum || act.size() < 2 || act.size() > 4) return std::nullopt;
  std::vector<Fit> fits;
  for (std::size_t i = 0; i < act.size(); ++i)
    for (std::size_t j = i + 1; j < act.size(); ++j)
      if (angle_distance(act[i].th, act[j].th + kPi) < 0.05)
        if (auto f = fit_pair(p, act[i], act[j])) fits.push_back(*f);
  if (act.size() >= 3) {
    for (std::size_t i = 0; i < act.size(); ++i)
      for (std::size_t j = i + 1; j < act.size(); ++j)
        for (std::size_t k = j + 1; k < act.size(); ++k)
          if (auto f = fit_triple(p, {act[i], act[j], act[k]})) fits.push_back(*f);
  }
  std::optional<Fit> best;
  for (const Fit& f : fits) {
    if (!(f.rho > 0.0) || std::abs(f.rho - p.rho) > 1e-9 + 10.0 * std::max(0.0, relax_violation)) continue;
    if (best && f.rho <= best->rho) continue;
    Problem q = p;
    q.a = f.a;
    q.rho = f.rho;
    if (worst_violation(q) > tol) continue;
    best = f;
  }
  return best;
}

}  // namespace

std::string to_string(ContactClass c) {
  switch (c) {
    case ContactClass::two: return "two";
    case ContactClass::three: return "three";
    case ContactClass::four_plus: return "four_plus";
    case ContactClass::continuum: return "continuum";
  }
  return "two";
}

namespace {

InscribedEllipse solve_unit_scale(const ConvexBody& body, const ShapeParam& shape, const SolverOptions& opts,
                                  SolveStats* stats) {
  const Gram g(shape);
  const std::vector<double> e = probe_ellipse_support(g);

  SupportLp lp;
  lp.reserve(static_cast<std::size_t>(opts.initial_directions + 4 * opts.max_cuts));
  const int m = std::clamp(opts.initial_directions, 3, kN);
  for (int i = 0; i < m; ++i) {
    const int k = static_cast<int>(static_cast<long>(i) * kN / m);
    lp.add(probe_direction(k), e[static_cast<std::size_t>(k)], body.probe_support(k));
  }

  std::vector<double> angles;
  for (int i = 0; i < m; ++i) angles.push_back(kDth * static_cast<int>(static_cast<long>(i) * kN / m));

  std::vector<double> viol(kN);
  double target = opts.polish ? std::max(opts.tol, opts.coarse_tol) : opts.tol;
  Vec2 a = Vec2::Zero();
  double rho = 0.0;
  double vmax = kInf;
  int iter = 0, pivots = 0;
  for (;; ++iter) {
    const SupportLpResult r = lp.solve();
    pivots += r.pivots;
    a = r.a;
    rho = r.rho;
    vmax = -kInf;
    for (int k = 0; k < kN; ++k) {
      const Vec2& u = probe_direction(k);
      const double v = a.dot(u) + rho * e[static_cast<std::size_t>(k)] - body.probe_support(k);
      viol[static_cast<std::size_t>(k)] = -v;
      vmax = std::max(vmax, v);
    }
    const Problem p{body, g, a, rho};
    std::vector<std::pair<double, double>> cuts;  // (violation, angle)
    for (int k : local_minima(viol, 1e-3 + kink_window(p))) {
      auto [th, gmin] = refine_gap_min(p, k);
      if (-gmin > -viol[static_cast<std::size_t>(k)])
        cuts.emplace_back(-gmin, th);
      else
        cuts.emplace_back(-viol[static_cast<std::size_t>(k)], kDth * k);
      vmax = std::max(vmax, cuts.back().first);
    }
    if (vmax <= target) {
      if (target > opts.tol || opts.polish) {
        if (auto f = polish(p, e, opts.tol, vmax)) {
          a = f->a;
          rho = f->rho;
          vmax = worst_violation(Problem{body, g, a, rho});
          break;
        }
      }
      if (vmax <= opts.tol) break;
      target = opts.tol;
    }
    if (iter >= opts.max_iterations || static_cast<int>(lp.size()) >= opts.max_directions)
      throw NumericError("extremal_solver", "solve_extremal", "cutting plane did not converge", vmax);
    std::sort(cuts.begin(), cuts.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    int added = 0;
    for (const auto& [v, th] : cuts) {
      if (v <= opts.tol || added >= opts.max_cuts) break;
      const double w = wrap_angle(th);
      if (std::any_of(angles.begin(), angles.end(), [&](double x) { return angle_distance(x, w) < 1e-7; })) continue;
      const Vec2 u = unit_vector(w);
      lp.add(u, g.support(u), body.support(u));
      angles.push_back(w);
      ++added;
    }
    if (added == 0) {
      // every violated direction is already a constraint: the LP is at its rounding floor
      if (vmax <= 10.0 * opts.tol) break;
      throw NumericError("extremal_solver", "solve_extremal", "cutting plane stagnated", vmax);
    }
  }
  if (!(rho > 0.0)) throw NumericError("extremal_solver", "solve_extremal", "non-positive scale", rho);

  if (opts.center_nonunique && body.has_flat_faces()) {
    // the extent seen from an end of the segment is less accurate; re-center until the shift vanishes
    for (int it = 0; it < 4; ++it) {
      const auto s = slide_for(Problem{body, g, a, rho}, e);
      if (!s) break;
      const double shift = 0.5 * (s->s_plus - s->s_minus);
      a += shift * s->t;
      if (std::abs(shift) < 1e-13) break;
    }
  }
  if (stats) *stats = {iter + 1, static_cast<int>(lp.size()), pivots, vmax};
  return make_inscribed(a, rho, shape);
}

}  // namespace

InscribedEllipse solve_extremal(const ConvexBody& body, const ShapeParam& shape, const SolverOptions& opts,
                                SolveStats* stats) {
  // Tolerances are absolute, so very thin, large or distant bodies are solved at unit scale.
  double half_width = kInf;
  for (int k = 0; k < kN / 2; ++k)
    half_width = std::min(half_width, 0.5 * (body.probe_support(k) + body.probe_support(k + kN / 2)));
  const Vec2 mid(0.5 * (body.probe_support(0) - body.probe_support(kN / 2)),
                 0.5 * (body.probe_support(kN / 4) - body.probe_support(3 * kN / 4)));
  if (half_width >= 0.1 && half_width <= 10.0 && mid.norm() <= 10.0 * half_width)
    return solve_unit_scale(body, shape, opts, stats);
  if (!(half_width >= 1e-150 && half_width <= 1e150) || !mid.allFinite())
    throw NumericError("extremal_solver", "solve_extremal", "body scale out of range", half_width);
  const ConvexBody unit = make_affine(body, Mat2::Identity() / half_width, -mid / half_width);
  const InscribedEllipse e = solve_unit_scale(unit, shape, opts, stats);
  return make_inscribed(mid + half_width * e.a, half_width * e.rho, shape);
}

double max_violation(const ConvexBody& body, const InscribedEllipse& el) {
  const Gram g(el.shape);
  return worst_violation(Problem{body, g, el.a, el.rho});
}

std::optional<CenterSlide> center_slide(const ConvexBody& body, const InscribedEllipse& el) {
  const Gram g(el.shape);
  Problem p{body, g, el.a, el.rho};
  return slide_for(p, probe_ellipse_support(g));
}

ContactReport contact_points(const ConvexBody& body, const InscribedEllipse& el, double tol) {
  const Gram g(el.shape);
  const std::vector<double> e = probe_ellipse_support(g);
  Problem p{body, g, el.a, el.rho};
  std::vector<double> gap(kN);
  for (int k = 0; k < kN; ++k) gap[static_cast<std::size_t>(k)] = p.gap_probe(k, e);

  const double worst = -*std::min_element(gap.begin(), gap.end());
  if (worst > 1e-6)
    throw DomainError("extremal_solver", "contact_points", "ellipse is not inscribed (violation " + std::to_string(worst) + ")");

  ContactReport rep;
  const bool smooth = !body.has_flat_faces() && body.smoothness().kind != SmoothnessClass::Kind::piecewise;

  // Arcs of near-zero gap.
  bool continuum = false;
  std::vector<double> run_centers;
  std::vector<std::pair<double, double>> corner_runs;  // (center, half width)
  {
    int start = -1;
    for (int k = 0; k < kN && start < 0; ++k)
      if (gap[static_cast<std::size_t>(k)] >= tol) start = k;
    if (start < 0) {
      continuum = true;
      run_centers.push_back(0.0);
    } else {
      int len = 0;
      for (int i = 1; i <= kN; ++i) {
        const int k = wrap_index(start + i);
        if (gap[static_cast<std::size_t>(k)] < tol) {
          ++len;
        } else if (len > 0) {
          if (len * kDth > 0.1) {
            // a normal cone at a corner also gives a long run; there the touching point stays put
            const Vec2 p0 = body.support_point(probe_direction(wrap_index(k - len + 1)));
            const Vec2 p1 = body.support_point(probe_direction(wrap_index(k - 2)));
            if ((p0 - p1).norm() > 1e-6) {
              continuum = true;
              run_centers.push_back(kDth * (k - 0.5 - 0.5 * len));
            } else {
              corner_runs.emplace_back(kDth * (k - 0.5 - 0.5 * len), 0.5 * kDth * (len + 1));
            }
          }
          len = 0;
        }
      }
    }
  }

  struct Cand {
    double th, gap;
  };
  std::vector<Cand> cands;
  for (int k : local_minima(gap, std::max(1e-4, 100.0 * tol) + kink_window(p) + grid_slack(gap))) {
    double lo = kDth * (k - 1), hi = kDth * (k + 1);
    auto [th, gv] = minimize([&](double x) { return p.gap(x); }, lo, hi);
    if (gap[static_cast<std::size_t>(k)] < gv) {
      th = kDth * k;
      gv = gap[static_cast<std::size_t>(k)];
    }
    if (auto f = body.flat_face(unit_vector(th), 1e-6)) {
      th = angle_of(face_normal(*f, unit_vector(th)));
      gv = p.gap(th);
    } else if (smooth) {
      const double s0 = p.gap_slope(lo), s1 = p.gap_slope(hi);
      if (s0 < 0.0 && s1 > 0.0) {
        std::uintmax_t it = 100;
        auto br = boost::math::tools::toms748_solve([&](double x) { return p.gap_slope(x); }, lo, hi, s0, s1,
                                                    boost::math::tools::eps_tolerance<double>(52), it);
        const double root = 0.5 * (br.first + br.second);
        const double groot = p.gap(root);
        if (groot <= gv + 1e-14) {
          th = root;
          gv = groot;
        }
      }
    }
    if (gv < tol) cands.push_back({wrap_angle(th), gv});
  }
  for (const auto& [mid, half] : corner_runs) {
    std::erase_if(cands, [&](const Cand& c) { return angle_distance(c.th, mid) <= half; });
    cands.push_back({wrap_angle(mid), p.gap(mid)});
  }
  for (double c : run_centers) cands.push_back({wrap_angle(c), p.gap(c)});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.th < y.th; });

  std::vector<std::vector<Cand>> clusters;
  for (const Cand& c : cands) {
    if (!clusters.empty() && angle_distance(clusters.back().back().th, c.th) <= 0.02)
      clusters.back().push_back(c);
    else
      clusters.push_back({c});
  }
  if (clusters.size() > 1 && angle_distance(clusters.front().front().th, clusters.back().back().th) <= 0.02) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  for (const auto& cl : clusters) {
    const Cand best = *std::min_element(cl.begin(), cl.end(), [](const Cand& x, const Cand& y) { return x.gap < y.gap; });
    ContactPoint cp;
    cp.t = best.th;
    cp.gap = best.gap;
    cp.normal = unit_vector(best.th);
    cp.theta = ellipse_angle_at_normal(el.shape, cp.normal);
    cp.point = el.a + el.rho * g.point(cp.normal);
    cp.body_curvature = body.curvature_at_normal(cp.normal);
    cp.ellipse_curvature = el.shape.beta > 0.0 ? ellipse_curvature(el, cp.theta) : kInf;
    cp.on_flat_face = body.flat_face(cp.normal, 1e-9).has_value();
    // several normals of one corner touch at the same point
    const Vec2 bp = body.support_point(cp.normal);
    auto same = std::find_if(rep.points.begin(), rep.points.end(), [&](const ContactPoint& q) {
      return (body.support_point(q.normal) - bp).norm() <= 1e-7 && (q.point - cp.point).norm() <= 1e-7;
    });
    if (same == rep.points.end())
      rep.points.push_back(cp);
    else if (!body.curvature_at_normal(cp.normal) && same->body_curvature)
      *same = cp;
  }

  const std::size_t n = rep.points.size();
  if (continuum)
    rep.count_class = ContactClass::continuum;
  else if (n >= 4)
    rep.count_class = ContactClass::four_plus;
  else if (n == 3)
    rep.count_class = ContactClass::three;
  else
    rep.count_class = ContactClass::two;

  if (auto s = slide_for(p, e)) rep.unique = s->s_plus + s->s_minus <= 1e-9;
  return rep;
}

InscribedEllipse ExtremalCache::get(const ShapeParam& shape) const {
  const Key key{static_cast<int>(shape.chart), std::bit_cast<std::uint64_t>(shape.c.real()),
                std::bit_cast<std::uint64_t>(shape.c.imag())};
  {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
  }
  InscribedEllipse e = solve_extremal(body_, shape, opts_);
  std::unique_lock lock(mutex_);
  if (table_.size() >= capacity_) table_.clear();
  table_.emplace(key, e);
  return e;
}

std::size_t ExtremalCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

}  // namespace vk
