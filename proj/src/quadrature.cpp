#include "screenbem/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace screenbem {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n, cos-spaced initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

// Collapse an n x n Gauss grid onto the reference triangle
// (0,0)-(1,0)-(0,1) via x = u, y = v(1-u); exact for total degree 2n-2.
QuadratureRule make_triangle_rule(int n) {
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  QuadratureRule rule;
  rule.degree = 2 * n - 2;
  rule.nodes.reserve(static_cast<std::size_t>(n) * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (gx[i] + 1.0);
    const double wu = 0.5 * gw[i];
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (gx[j] + 1.0);
      const double wv = 0.5 * gw[j];
      const double x = u;
      const double y = v * (1.0 - u);
      rule.nodes.push_back({1.0 - x - y, x, y});
      // Jacobian (1-u); factor 2 rescales the reference area 1/2 to 1.
      rule.weights.push_back(2.0 * wu * wv * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  int n = std::max(1, (degree + 2) / 2);
  if (2 * n - 2 < degree) ++n;
  std::scoped_lock lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_triangle_rule(n)).first;
  return it->second;
}

}  // namespace screenbem
