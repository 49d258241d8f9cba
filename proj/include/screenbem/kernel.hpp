#pragma once

#include <array>
#include <functional>

#include "screenbem/quadrature.hpp"
#include "screenbem/types.hpp"

namespace screenbem {

/// Positive wavenumber. k = 0 is only reachable through static_mode(), the
/// validation hook for the electrostatic disk oracle; the scattering
/// operations reject static-mode wavenumbers.
class WaveNumber {
 public:
  explicit WaveNumber(double k) : k_(k) {
    if (!(k > 0.0)) throw ValidationError("wavenumber: k must be positive");
  }
  static WaveNumber static_mode() { return WaveNumber(0.0, true); }

  double value() const { return k_; }
  bool is_static() const { return is_static_; }

 private:
  WaveNumber(double k, bool is_static) : k_(k), is_static_(is_static) {}
  double k_;
  bool is_static_ = false;
};

/// Outgoing Helmholtz fundamental solution e^{ik|x-y|} / (4 pi |x-y|).
Complex phi(const WaveNumber& k, const Vec3& x, const Vec3& y);

/// Closed-form integral of 1/(4 pi |x' - y'|) over a planar triangle,
/// valid for x' inside, on, or outside the triangle.
double static_triangle_potential(const std::array<Vec2, 3>& tri,
                                 const Vec2& x);

/// Integral of Phi(x^0, y^0) over a planar triangle for an in-plane (or
/// nearly in-plane) evaluation point. Splits the kernel into the static part
/// (closed form above) and the bounded remainder (e^{ikr}-1)/(4 pi r),
/// integrated by polar-wedge Gauss quadrature around x'.
Complex singular_panel_integral(const WaveNumber& k,
                                const std::array<Vec2, 3>& tri, const Vec2& x,
                                int wedge_order = 16);

/// Integral of Phi(x, y^0) over a planar triangle at any 3D evaluation point.
/// Dispatches: wedge path when dist(x, T) < 2 diam(T), tensor Gauss rule
/// otherwise.
Complex panel_potential(const WaveNumber& k, const std::array<Vec2, 3>& tri,
                        const Vec3& x, int regular_degree = 6,
                        int wedge_order = 16);

/// Same with a bounded scalar weight under the integral (edge-weighted
/// basis); the singular path uses a 2D polar-wedge rule.
Complex panel_potential_weighted(
    const WaveNumber& k, const std::array<Vec2, 3>& tri, const Vec3& x,
    const std::function<double(const Vec2&)>& weight, int regular_degree = 6,
    int wedge_order = 16);

double point_triangle_distance(const std::array<Vec2, 3>& tri, const Vec2& p);
double triangle_diameter(const std::array<Vec2, 3>& tri);

}  // namespace screenbem
