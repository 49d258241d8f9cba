#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace screenbem {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Bad input: shape/config/precondition violations. CLI exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation requested at a point outside an operation's domain.
struct DomainError : ValidationError {
  using ValidationError::ValidationError;
};

/// Numerical failure: meshing breakdown, ill-conditioning. CLI exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Vec3 lift(const Vec2& p) { return Vec3(p.x(), p.y(), 0.0); }

}  // namespace screenbem
