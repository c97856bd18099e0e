// Classification of leaves and points by contact counts and curvature margins.
#pragma once

#include "vk/leaf_eval.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vk {

enum class LeafCase { pluriharmonic, two_contact, three_contact, four_plus, continuum, inapplicable };
enum class Verdict { smooth_Cr, unresolved, known_nonsmooth_candidate };

std::string to_string(LeafCase c);
std::string to_string(Verdict v);

struct SmoothnessVerdict {
  LeafCase leaf_case = LeafCase::two_contact;
  std::vector<double> curvature_margins;  // kappa_ellipse - kappa_body per contact
  Verdict verdict = Verdict::unresolved;
  std::string notes;
  ContactReport contacts;
};

inline constexpr double kMarginTol = 1e-5;

SmoothnessVerdict classify_leaf(const ConvexBody& body, const InscribedEllipse& e, double tol = kMarginTol);

/// Verdict of the leaf through z; throws DomainError for z in K.
SmoothnessVerdict classify_point(const ExtremalCache& leaves, const ComplexPoint2& z, double tol = kMarginTol);

/// max |d^2 V / dz_j d conj(z_k)| from central differences of V with steps h and 2h, extrapolated to O(h^4).
double pluriharmonic_test(const ExtremalCache& leaves, const ComplexPoint2& z, double h);
/// Same statistic for any function of C^2.
double complex_hessian_norm(const std::function<double(const ComplexPoint2&)>& v, const ComplexPoint2& z, double h);

/// True when the leaf meets one of the flag rules used by the parameter scan.
bool is_flagged(const SmoothnessVerdict& v, double tol = kMarginTol);

struct ScanCell {
  double gamma = 0.0;
  double psi = 0.0;
  LeafCase leaf_case = LeafCase::two_contact;
  bool flagged = false;
  double min_margin = 0.0;
};

struct ScanLevel {
  int n = 0;
  double spacing = 0.0;
  double flagged_fraction = 0.0;
  std::vector<ScanCell> cells;
};

struct ScanReport {
  std::vector<ScanLevel> levels;
  double slope = 0.0;  // d log(fraction) / d log(spacing), least squares
};

/// Nodes (gamma_i, psi_j) = (i/n, pi j/n), i = 0..n, j = 0..n-1, for each n in grids.
ScanReport scan_bad_parameters(const ConvexBody& body, const std::vector<int>& grids, double tol = kMarginTol,
                               Exec exec = Exec::parallel);

}  // namespace vk
