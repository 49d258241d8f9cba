#pragma once

#include <array>
#include <vector>

#include "screenbem/types.hpp"

namespace screenbem {

/// Quadrature rule on the reference triangle, nodes in barycentric
/// coordinates, weights normalized to sum to 1. A physical integral over a
/// triangle T is area(T) * sum_q w_q f(x_q).
struct QuadratureRule {
  std::vector<std::array<double, 3>> nodes;
  std::vector<double> weights;
  int degree = 0;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Symmetric-free rule of given polynomial exactness degree (1..12), built by
/// collapsing a tensor Gauss-Legendre grid onto the triangle. Positive
/// weights, all nodes interior.
const QuadratureRule& triangle_rule(int degree);

inline Vec2 barycentric_point(const std::array<Vec2, 3>& tri,
                              const std::array<double, 3>& b) {
  return b[0] * tri[0] + b[1] * tri[1] + b[2] * tri[2];
}

}  // namespace screenbem
