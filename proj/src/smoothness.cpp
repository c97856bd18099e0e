#include "vk/smoothness.hpp"

#include <algorithm>
#include <array>

namespace vk {

std::string to_string(LeafCase c) {
  switch (c) {
    case LeafCase::pluriharmonic: return "pluriharmonic";
    case LeafCase::two_contact: return "two_contact";
    case LeafCase::three_contact: return "three_contact";
    case LeafCase::four_plus: return "four_plus";
    case LeafCase::continuum: return "continuum";
    case LeafCase::inapplicable: return "inapplicable";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::smooth_Cr: return "smooth_Cr";
    case Verdict::unresolved: return "unresolved";
    case Verdict::known_nonsmooth_candidate: return "known_nonsmooth_candidate";
  }
  return "?";
}

namespace {

// Contact strictly inside a boundary segment.
bool inside_flat_face(const ConvexBody& body, const ContactPoint& cp) {
  const auto f = body.flat_face(cp.normal, 1e-9);
  if (!f) return false;
  const double len = (f->p1 - f->p0).norm();
  const double s = (cp.point - f->p0).dot(f->p1 - f->p0) / (len * len);
  return s * len > 1e-7 && (1.0 - s) * len > 1e-7;
}

}  // namespace

SmoothnessVerdict classify_leaf(const ConvexBody& body, const InscribedEllipse& e, double tol) {
  SmoothnessVerdict v;
  v.contacts = contact_points(body, e);
  const auto& pts = v.contacts.points;
  bool corner = false;
  for (const ContactPoint& cp : pts) {
    if (!cp.body_curvature) {
      corner = true;
      v.curvature_margins.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      v.curvature_margins.push_back(cp.ellipse_curvature - *cp.body_curvature);
    }
  }

  switch (v.contacts.count_class) {
    case ContactClass::continuum:
      v.leaf_case = LeafCase::continuum;
      v.verdict = Verdict::known_nonsmooth_candidate;
      v.notes = "contact set fills an arc";
      return v;
    case ContactClass::four_plus:
      v.leaf_case = LeafCase::four_plus;
      v.verdict = Verdict::known_nonsmooth_candidate;
      v.notes = std::to_string(pts.size()) + " contacts";
      return v;
    default:
      break;
  }
  if (corner) {
    v.leaf_case = LeafCase::inapplicable;
    v.verdict = Verdict::unresolved;
    v.notes = "contact at a boundary corner";
    return v;
  }
  const bool all_flat = !pts.empty() && std::all_of(pts.begin(), pts.end(), [&](const ContactPoint& cp) {
    return inside_flat_face(body, cp);
  });
  if (all_flat && pts.size() == 2 && std::abs(pts[0].normal.dot(pts[1].normal) + 1.0) < 1e-9) {
    v.leaf_case = LeafCase::pluriharmonic;
    v.verdict = Verdict::smooth_Cr;
    v.notes = "contacts inside a pair of parallel boundary segments";
    return v;
  }
  const auto above = [&](double m) { return m > tol; };
  if (pts.size() == 3) {
    v.leaf_case = LeafCase::three_contact;
    const bool ok = std::all_of(v.curvature_margins.begin(), v.curvature_margins.end(), above);
    v.verdict = ok ? Verdict::smooth_Cr : Verdict::unresolved;
    v.notes = ok ? "all three margins positive" : "a margin at or below tolerance";
  } else {
    v.leaf_case = LeafCase::two_contact;
    const bool ok = std::any_of(v.curvature_margins.begin(), v.curvature_margins.end(), above);
    v.verdict = ok ? Verdict::smooth_Cr : Verdict::unresolved;
    v.notes = ok ? "positive margin at a contact" : "both margins at or below tolerance";
  }
  return v;
}

SmoothnessVerdict classify_point(const ExtremalCache& leaves, const ComplexPoint2& z, double tol) {
  if (in_body(leaves.body(), z))
    throw DomainError("smoothness", "classify_point", "point lies in K");
  const LeafSolution s = eval_V(leaves, z);
  return classify_leaf(leaves.body(), s.ellipse, tol);
}

double complex_hessian_norm(const std::function<double(const ComplexPoint2&)>& v, const ComplexPoint2& z, double h) {
  // Real coordinates (x1, y1, x2, y2).
  const auto shifted = [&](int i, double si, int j, double sj) {
    std::array<double, 4> x{z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag()};
    x[static_cast<std::size_t>(i)] += si;
    if (j >= 0) x[static_cast<std::size_t>(j)] += sj;
    return v(ComplexPoint2(cplx(x[0], x[1]), cplx(x[2], x[3])));
  };
  const double f0 = v(z);
  const auto central = [&](double d) {
    Eigen::Matrix4d hess;
    for (int i = 0; i < 4; ++i) hess(i, i) = (shifted(i, d, -1, 0) - 2.0 * f0 + shifted(i, -d, -1, 0)) / (d * d);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double q = shifted(i, d, j, d) - shifted(i, d, j, -d) - shifted(i, -d, j, d) + shifted(i, -d, j, -d);
        hess(i, j) = hess(j, i) = q / (4.0 * d * d);
      }
    return hess;
  };
  // Richardson step on the O(h^2) central stencil gives O(h^4) truncation.
  const Eigen::Matrix4d hess = (4.0 * central(h) - central(2.0 * h)) / 3.0;
  double worst = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      const cplx w(hess(xj, xk) + hess(yj, yk), hess(xj, yk) - hess(yj, xk));
      worst = std::max(worst, 0.25 * std::abs(w));
    }
  return worst;
}

double pluriharmonic_test(const ExtremalCache& leaves, const ComplexPoint2& z, double h) {
  const LeafSolution center = eval_V(leaves, z);
  if (center.on_body) throw DomainError("smoothness", "pluriharmonic_test", "point lies in K");
  return complex_hessian_norm([&](const ComplexPoint2& w) { return eval_V_from(leaves, w, center).value; }, z, h);
}

bool is_flagged(const SmoothnessVerdict& v, double tol) {
  const auto& m = v.curvature_margins;
  switch (v.leaf_case) {
    case LeafCase::four_plus:
    case LeafCase::continuum:
      return true;
    case LeafCase::three_contact:
      return std::any_of(m.begin(), m.end(), [&](double x) { return !(x > tol); });
    case LeafCase::two_contact:
      return std::all_of(m.begin(), m.end(), [&](double x) { return !(x > tol); });
    default:
      return false;
  }
}

ScanReport scan_bad_parameters(const ConvexBody& body, const std::vector<int>& grids, double tol, Exec exec) {
  if (grids.empty()) throw ConfigError("smoothness", "scan_bad_parameters", "no grid sizes given");
  ScanReport rep;
  for (int n : grids) {
    if (n < 2) throw ConfigError("smoothness", "scan_bad_parameters", "grid must be at least 2");
    ScanLevel lvl;
    lvl.n = n;
    lvl.spacing = 1.0 / n;
    lvl.cells.resize(static_cast<std::size_t>((n + 1) * n));
    for_each_index(static_cast<std::int64_t>(lvl.cells.size()), exec, [&](std::int64_t k) {
      ScanCell& c = lvl.cells[static_cast<std::size_t>(k)];
      c.gamma = static_cast<double>(k / n) / n;
      c.psi = kPi * static_cast<double>(k % n) / n;
      const InscribedEllipse e = solve_extremal(body, c_from_shape(c.gamma, c.psi));
      const SmoothnessVerdict v = classify_leaf(body, e, tol);
      c.leaf_case = v.leaf_case;
      c.flagged = is_flagged(v, tol);
      c.min_margin = v.curvature_margins.empty()
                         ? 0.0
                         : *std::min_element(v.curvature_margins.begin(), v.curvature_margins.end());
    });
    const auto flagged = std::count_if(lvl.cells.begin(), lvl.cells.end(), [](const ScanCell& c) { return c.flagged; });
    lvl.flagged_fraction = static_cast<double>(flagged) / static_cast<double>(lvl.cells.size());
    rep.levels.push_back(std::move(lvl));
  }
  // Least-squares slope over levels with a nonzero fraction.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const ScanLevel& l : rep.levels) {
    if (l.flagged_fraction <= 0.0) continue;
    const double x = std::log(l.spacing), y = std::log(l.flagged_fraction);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  rep.slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  return rep;
}

}  // namespace vk
