#include "screenbem/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace screenbem {

Complex phi(const WaveNumber& k, const Vec3& x, const Vec3& y) {
  const double r = (x - y).norm();
  if (r == 0.0) throw DomainError("phi: coincident evaluation points");
  if (k.value() == 0.0) return Complex(1.0 / (4.0 * kPi * r), 0.0);
  return std::polar(1.0 / (4.0 * kPi * r), k.value() * r);
}

double triangle_diameter(const std::array<Vec2, 3>& tri) {
  return std::max({(tri[1] - tri[0]).norm(), (tri[2] - tri[1]).norm(),
                   (tri[0] - tri[2]).norm()});
}

double point_triangle_distance(const std::array<Vec2, 3>& tri, const Vec2& p) {
  auto cross = [](const Vec2& u, const Vec2& v) {
    return u.x() * v.y() - u.y() * v.x();
  };
  const double s0 = cross(tri[1] - tri[0], p - tri[0]);
  const double s1 = cross(tri[2] - tri[1], p - tri[1]);
  const double s2 = cross(tri[0] - tri[2], p - tri[2]);
  if (s0 >= 0.0 && s1 >= 0.0 && s2 >= 0.0) return 0.0;
  double best = std::numeric_limits<double>::max();
  for (int e = 0; e < 3; ++e) {
    const Vec2& a = tri[e];
    const Vec2 ab = tri[(e + 1) % 3] - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0
                         ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0)
                         : 0.0;
    best = std::min(best, (p - (a + t * ab)).norm());
  }
  return best;
}

double static_triangle_potential(const std::array<Vec2, 3>& tri,
                                 const Vec2& x) {
  const double scale = triangle_diameter(tri);
  const double area2 = std::abs((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                                (tri[2] - tri[0]).x() * (tri[1] - tri[0]).y());
  if (scale == 0.0 || area2 < 1e-14 * scale * scale) {
    throw ValidationError("panel integral: degenerate triangle");
  }
  double total = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec2 a = tri[e] - x;
    const Vec2 b = tri[(e + 1) % 3] - x;
    const Vec2 edge = b - a;
    const double len = edge.norm();
    if (len < 1e-300) continue;
    const Vec2 ehat = edge / len;
    // Signed distance from x to the edge line; zero means a degenerate wedge.
    const double d = (a.x() * b.y() - a.y() * b.x()) / len;
    if (std::abs(d) < 1e-14 * scale) continue;
    const double sa = a.dot(ehat);
    const double sb = b.dot(ehat);
    total += d * (std::asinh(sb / std::abs(d)) - std::asinh(sa / std::abs(d)));
  }
  return total / (4.0 * kPi);
}

namespace {

// Signed polar-wedge sweep: integrates g(R(phi)) d phi over the three
// vertex wedges around the projection of x; g already contains the exact
// radial integral, so only the angular direction is quadratured.
template <typename RadialIntegral>
Complex wedge_sweep(const std::array<Vec2, 3>& tri, const Vec2& x, int order,
                    const RadialIntegral& g) {
  const double scale = triangle_diameter(tri);
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  Complex total(0.0, 0.0);
  for (int e = 0; e < 3; ++e) {
    const Vec2 a = tri[e] - x;
    const Vec2 b = tri[(e + 1) % 3] - x;
    const double cr = a.x() * b.y() - a.y() * b.x();
    if (std::abs(cr) < 1e-14 * scale * scale) continue;
    const double sweep = std::atan2(cr, a.dot(b));  // signed, in (-pi, pi)
    const double ra = a.norm();
    const Vec2 ahat = a / ra;
    const Vec2 ab = b - a;
    const double num = ab.x() * a.y() - ab.y() * a.x();  // cross(B-A, A-P)
    Complex acc(0.0, 0.0);
    for (int q = 0; q < order; ++q) {
      const double s = 0.5 * (gx[q] + 1.0);
      const double phi_q = sweep * s;
      const double c = std::cos(phi_q), sn = std::sin(phi_q);
      const Vec2 omega(ahat.x() * c - ahat.y() * sn,
                       ahat.x() * sn + ahat.y() * c);
      const double den = ab.x() * omega.y() - ab.y() * omega.x();
      const double radius = num / den;
      acc += 0.5 * gw[q] * g(radius, omega);
    }
    total += sweep * acc;
  }
  return total;
}

Complex regular_panel_quadrature(const WaveNumber& k,
                                 const std::array<Vec2, 3>& tri, const Vec3& x,
                                 int degree) {
  const QuadratureRule& rule = triangle_rule(degree);
  const double area =
      0.5 * std::abs((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                     (tri[2] - tri[0]).x() * (tri[1] - tri[0]).y());
  Complex acc(0.0, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Vec2 y = barycentric_point(tri, rule.nodes[q]);
    acc += rule.weights[q] * phi(k, x, lift(y));
  }
  return area * acc;
}

}  // namespace

Complex singular_panel_integral(const WaveNumber& k,
                                const std::array<Vec2, 3>& tri, const Vec2& x,
                                int wedge_order) {
  const double stat = static_triangle_potential(tri, x);
  if (k.value() == 0.0) return Complex(stat, 0.0);
  const Complex ik(0.0, k.value());
  // Remainder (e^{ikr}-1)/(4 pi r): radial integral is analytic in R.
  const Complex rem = wedge_sweep(
      tri, x, wedge_order, [&](double R, const Vec2&) -> Complex {
        return ((std::exp(ik * R) - 1.0) / ik - R) / (4.0 * kPi);
      });
  return stat + rem;
}

Complex panel_potential(const WaveNumber& k, const std::array<Vec2, 3>& tri,
                        const Vec3& x, int regular_degree, int wedge_order) {
  const Vec2 xp(x.x(), x.y());
  const double z = x.z();
  const double diam = triangle_diameter(tri);
  const double dist = std::hypot(point_triangle_distance(tri, xp), z);
  if (dist >= 2.0 * diam) {
    return regular_panel_quadrature(k, tri, x, regular_degree);
  }
  if (z == 0.0) return singular_panel_integral(k, tri, xp, wedge_order);
  // Off-plane near field: the radial integral of the full kernel is closed
  // form after the substitution u = sqrt(rho^2 + z^2).
  const double az = std::abs(z);
  if (k.value() == 0.0) {
    return wedge_sweep(tri, xp, wedge_order,
                       [&](double R, const Vec2&) -> Complex {
                         return (std::hypot(R, z) - az) / (4.0 * kPi);
                       });
  }
  const Complex ik(0.0, k.value());
  return wedge_sweep(tri, xp, wedge_order,
                     [&](double R, const Vec2&) -> Complex {
                       return (std::exp(ik * std::hypot(R, z)) -
                               std::exp(ik * az)) /
                              (4.0 * kPi * ik);
                     });
}

Complex panel_potential_weighted(
    const WaveNumber& k, const std::array<Vec2, 3>& tri, const Vec3& x,
    const std::function<double(const Vec2&)>& weight, int regular_degree,
    int wedge_order) {
  const Vec2 xp(x.x(), x.y());
  const double z = x.z();
  const double diam = triangle_diameter(tri);
  const double dist = std::hypot(point_triangle_distance(tri, xp), z);
  if (dist >= 2.0 * diam) {
    const QuadratureRule& rule = triangle_rule(regular_degree);
    const double area =
        0.5 * std::abs((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                       (tri[2] - tri[0]).x() * (tri[1] - tri[0]).y());
    Complex acc(0.0, 0.0);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const Vec2 y = barycentric_point(tri, rule.nodes[q]);
      acc += rule.weights[q] * weight(y) * phi(k, x, lift(y));
    }
    return area * acc;
  }
  // Singular path: 2D polar-wedge rule; rho d rho removes the singularity.
  const int radial_order = std::max(6, wedge_order / 2);
  std::vector<double> rx, rw;
  gauss_legendre(radial_order, rx, rw);
  const double kk = k.value();
  const double az = std::abs(z);
  return wedge_sweep(tri, xp, wedge_order,
                     [&](double R, const Vec2& omega) -> Complex {
                       Complex acc(0.0, 0.0);
                       for (int q = 0; q < radial_order; ++q) {
                         const double rho = R * 0.5 * (rx[q] + 1.0);
                         const double w = R * 0.5 * rw[q];
                         const Vec2 y = xp + rho * omega;
                         const double r3 = std::hypot(rho, az);
                         if (r3 == 0.0) continue;
                         const Complex ker =
                             std::polar(1.0 / (4.0 * kPi * r3), kk * r3);
                         acc += w * weight(y) * ker * rho;
                       }
                       return acc;
                     });
}

}  // namespace screenbem
