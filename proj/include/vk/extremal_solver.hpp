// Maximal inscribed ellipse of a fixed shape and its contact set.
#pragma once

#include "vk/body.hpp"
#include "vk/ellipse.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace vk {

struct SolverOptions {
  double tol = 1e-10;        // worst admissible violation of a.u + rho e(u) <= h(u)
  int initial_directions = 256;
  int max_directions = 1 << 16;
  int max_cuts = 16;         // cuts added per iteration
  int max_iterations = 400;
  double coarse_tol = 1e-4;  // relaxation accuracy before the contact equations take over
  bool polish = true;
  bool center_nonunique = true;  // move to the midpoint of the optimal center segment
};

struct SolveStats {
  int iterations = 0;
  int directions = 0;
  int pivots = 0;
  double violation = 0.0;
};

/// Maximizes rho subject to a.u + rho ellipse_support(shape, u) <= h_K(u).
InscribedEllipse solve_extremal(const ConvexBody& body, const ShapeParam& shape,
                                const SolverOptions& opts = {}, SolveStats* stats = nullptr);

/// Largest value of a.u + rho e(u) - h_K(u) over probe directions, refined locally.
double max_violation(const ConvexBody& body, const InscribedEllipse& e);

enum class ContactClass { two, three, four_plus, continuum };
std::string to_string(ContactClass c);

struct ContactPoint {
  double t = 0.0;       // outward normal angle
  double theta = 0.0;   // ellipse angle (alpha, beta, psi frame)
  Vec2 point = Vec2::Zero();
  Vec2 normal = Vec2::Zero();
  double gap = 0.0;
  std::optional<double> body_curvature;  // nullopt at corners
  double ellipse_curvature = 0.0;        // +inf for segments
  bool on_flat_face = false;
};

struct ContactReport {
  std::vector<ContactPoint> points;
  ContactClass count_class = ContactClass::two;
  bool unique = true;
};

ContactReport contact_points(const ConvexBody& body, const InscribedEllipse& e, double tol = 1e-8);

/// Extent [-s_minus, s_plus] along t over which the center can slide at fixed rho.
struct CenterSlide {
  Vec2 t = Vec2::Zero();
  double s_minus = 0.0;
  double s_plus = 0.0;
};
/// Empty when the contact set has no pair of antipodal flat-face contacts.
std::optional<CenterSlide> center_slide(const ConvexBody& body, const InscribedEllipse& e);

/// Shape -> extremal memo for one body; many readers, one writer at a time.
class ExtremalCache {
 public:
  explicit ExtremalCache(ConvexBody body, SolverOptions opts = {}, std::size_t capacity = 1 << 20)
      : body_(std::move(body)), opts_(opts), capacity_(capacity) {}

  InscribedEllipse get(const ShapeParam& shape) const;
  const ConvexBody& body() const { return body_; }
  std::size_t size() const;

 private:
  using Key = std::tuple<int, std::uint64_t, std::uint64_t>;
  ConvexBody body_;
  SolverOptions opts_;
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, InscribedEllipse> table_;
};

}  // namespace vk
