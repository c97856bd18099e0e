// Basic numeric types shared by every module.
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vk {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Point z = (z1, z2) of C^2.
struct ComplexPoint2 {
  cplx z1{};
  cplx z2{};

  ComplexPoint2() = default;
  ComplexPoint2(cplx a, cplx b) : z1(a), z2(b) {}

  cplx& operator[](int i) { return i == 0 ? z1 : z2; }
  const cplx& operator[](int i) const { return i == 0 ? z1 : z2; }

  ComplexPoint2& operator+=(const ComplexPoint2& o) {
    z1 += o.z1;
    z2 += o.z2;
    return *this;
  }
  ComplexPoint2& operator-=(const ComplexPoint2& o) {
    z1 -= o.z1;
    z2 -= o.z2;
    return *this;
  }
  friend ComplexPoint2 operator+(ComplexPoint2 a, const ComplexPoint2& b) { return a += b; }
  friend ComplexPoint2 operator-(ComplexPoint2 a, const ComplexPoint2& b) { return a -= b; }
  friend ComplexPoint2 operator*(cplx s, const ComplexPoint2& a) { return {s * a.z1, s * a.z2}; }
  friend ComplexPoint2 operator*(const ComplexPoint2& a, cplx s) { return {s * a.z1, s * a.z2}; }

  ComplexPoint2 conj() const { return {std::conj(z1), std::conj(z2)}; }
  double norm() const { return std::hypot(std::abs(z1), std::abs(z2)); }
  Vec2 real() const { return {z1.real(), z2.real()}; }
  Vec2 imag() const { return {z1.imag(), z2.imag()}; }
  bool is_finite() const {
    return std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::isfinite(z2.real()) && std::isfinite(z2.imag());
  }
  bool is_real(double tol = 0.0) const {
    return std::abs(z1.imag()) <= tol && std::abs(z2.imag()) <= tol;
  }

  static ComplexPoint2 from_real(const Vec2& x) { return {cplx(x[0], 0.0), cplx(x[1], 0.0)}; }
};

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double angle_of(const Vec2& v) { return std::atan2(v[1], v[0]); }
inline Vec2 perp(const Vec2& v) { return {-v[1], v[0]}; }
inline double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

/// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > kPi ? kTwoPi - d : d;
}

/// Library error carrying the originating module and operation.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string op, const std::string& what)
      : std::runtime_error(module + "::" + op + ": " + what),
        module_(std::move(module)),
        op_(std::move(op)) {}
  const std::string& module() const { return module_; }
  const std::string& operation() const { return op_; }

 private:
  std::string module_;
  std::string op_;
};

/// Invalid input parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (zeta = 0, |zeta| < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed; carries the best residual reached.
class NumericError : public Error {
 public:
  NumericError(std::string module, std::string op, const std::string& what, double residual)
      : Error(std::move(module), std::move(op),
              what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace vk
