#include "screenbem/direct_solver.hpp"

#include <cmath>

#include <Eigen/LU>

#include "screenbem/parallel.hpp"

namespace screenbem {

namespace {

constexpr int kOuterDegree = 6;

double p0w_weight(const ScreenMesh& mesh, int t, const Vec2& y) {
  // Barycentric interpolation of vertex boundary distances; 1-Lipschitz, so
  // the interpolation error is O(h) and absorbed by the basis.
  const auto& tri = mesh.triangles[t];
  const Vec2& p0 = mesh.vertices[tri.v[0]];
  const Vec2& p1 = mesh.vertices[tri.v[1]];
  const Vec2& p2 = mesh.vertices[tri.v[2]];
  const double det = (p1 - p0).x() * (p2 - p0).y() -
                     (p2 - p0).x() * (p1 - p0).y();
  const double l1 = ((y - p0).x() * (p2 - p0).y() -
                     (p2 - p0).x() * (y - p0).y()) / det;
  const double l2 = ((p1 - p0).x() * (y - p0).y() -
                     (y - p0).x() * (p1 - p0).y()) / det;
  const double l0 = 1.0 - l1 - l2;
  const double d = l0 * mesh.vertex_boundary_distance[tri.v[0]] +
                   l1 * mesh.vertex_boundary_distance[tri.v[1]] +
                   l2 * mesh.vertex_boundary_distance[tri.v[2]];
  return 1.0 / std::sqrt(std::max(d, mesh.min_diameter));
}

Complex inner_potential(const WaveNumber& k, const ScreenMesh& mesh, int j,
                        const Vec3& x, BasisKind basis) {
  const auto tri = mesh.triangle_vertices(j);
  if (basis == BasisKind::P0) return panel_potential(k, tri, x);
  return panel_potential_weighted(
      k, tri, x, [&](const Vec2& y) { return p0w_weight(mesh, j, y); });
}

}  // namespace

double Density::weight_at(int t, const Vec2& y) const {
  if (basis == BasisKind::P0) return 1.0;
  return p0w_weight(*mesh, t, y);
}

Complex Density::value_at(int t, const Vec2& y) const {
  return coefficients[t] * weight_at(t, y);
}

Eigen::VectorXd Density::basis_masses() const {
  const int n = mesh->panel_count();
  Eigen::VectorXd m(n);
  const QuadratureRule& rule = triangle_rule(kOuterDegree);
  for (int t = 0; t < n; ++t) {
    if (basis == BasisKind::P0) {
      m[t] = mesh->triangles[t].area;
      continue;
    }
    const auto tri = mesh->triangle_vertices(t);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      acc += rule.weights[q] *
             weight_at(t, barycentric_point(tri, rule.nodes[q]));
    }
    m[t] = mesh->triangles[t].area * acc;
  }
  return m;
}

Complex Density::total_mass() const {
  return coefficients.cwiseProduct(basis_masses().cast<Complex>()).sum();
}

Complex galerkin_entry(const WaveNumber& k, const ScreenMesh& mesh, int a,
                       int b, BasisKind basis) {
  const auto tri = mesh.triangle_vertices(a);
  const QuadratureRule& rule = triangle_rule(kOuterDegree);
  Complex acc(0.0, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Vec2 x = barycentric_point(tri, rule.nodes[q]);
    const double w = basis == BasisKind::P0 ? 1.0 : p0w_weight(mesh, a, x);
    acc += rule.weights[q] * w * inner_potential(k, mesh, b, lift(x), basis);
  }
  return mesh.triangles[a].area * acc;
}

LinearSystem assemble(const WaveNumber& k,
                      std::shared_ptr<const ScreenMesh> mesh,
                      const IncidentWave& incident, BasisKind basis) {
  incident.validate_against_screen(mesh->shape);
  const int n = mesh->panel_count();
  LinearSystem sys{Eigen::MatrixXcd(n, n), Eigen::VectorXcd(n), basis, mesh, k};

  // Each unordered pair is computed once (outer = lower index) and mirrored:
  // valid because Phi(x,y) = Phi(y,x), and it keeps S_h = S_h^T exactly.
  // Rows m and n-1-m are paired so static chunking stays load-balanced.
  auto fill_row = [&](int i) {
    for (int j = i; j < n; ++j) {
      const Complex entry = galerkin_entry(k, *mesh, i, j, basis);
      sys.matrix(i, j) = entry;
      sys.matrix(j, i) = entry;
    }
  };
  const std::size_t half = (static_cast<std::size_t>(n) + 1) / 2;
  parallel_for(half, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      fill_row(static_cast<int>(m));
      const int mirror = n - 1 - static_cast<int>(m);
      if (mirror != static_cast<int>(m)) fill_row(mirror);
    }
  });

  const QuadratureRule& rule = triangle_rule(kOuterDegree);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto tri = mesh->triangle_vertices(static_cast<int>(i));
      Complex acc(0.0, 0.0);
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const Vec2 y = barycentric_point(tri, rule.nodes[q]);
        const double w = basis == BasisKind::P0
                             ? 1.0
                             : p0w_weight(*mesh, static_cast<int>(i), y);
        acc += rule.weights[q] * w * incident.value(k, lift(y));
      }
      sys.rhs[i] = -mesh->triangles[i].area * acc;
    }
  });
  return sys;
}

Density solve(const LinearSystem& system, SolveInfo* info) {
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.matrix);
  const double rcond = lu.rcond();
  if (rcond > 0.0 && 1.0 / rcond > 1e14) {
    throw NumericalError(
        "solve: condition estimate above 1e14 (k=" +
        std::to_string(system.k.value()) + ", panels=" +
        std::to_string(system.mesh->panel_count()) + ")");
  }
  Density density{system.mesh, lu.solve(system.rhs), system.basis};
  const double rhs_norm = system.rhs.norm();
  const double residual =
      rhs_norm == 0.0
          ? 0.0
          : (system.matrix * density.coefficients - system.rhs).norm() /
                rhs_norm;
  if (residual > 1e-10) {
    throw NumericalError("solve: residual above 1e-10 (" +
                         std::to_string(residual) + ")");
  }
  if (info) {
    info->relative_residual = residual;
    info->condition_estimate = rcond > 0.0 ? 1.0 / rcond : 0.0;
  }
  return density;
}

Complex scattered_field(const Density& density, const WaveNumber& k,
                        const Vec3& x) {
  const ScreenMesh& mesh = *density.mesh;
  if (x.z() == 0.0) {
    const Vec2 xp(x.x(), x.y());
    const bool inside = mesh.shape.contains(xp);
    if (inside || mesh.shape.boundary_distance(xp) <= mesh.target_h) {
      throw DomainError(
          "scattered_field: point on the screen; use trace_on_screen");
    }
  }
  Complex total(0.0, 0.0);
  for (int j = 0; j < mesh.panel_count(); ++j) {
    total += density.coefficients[j] *
             inner_potential(k, mesh, j, x, density.basis);
  }
  return total;
}

Complex trace_on_screen(const Density& density, const WaveNumber& k,
                        const Vec2& x) {
  const ScreenMesh& mesh = *density.mesh;
  if (!mesh.shape.contains(x)) {
    throw DomainError("trace_on_screen: point outside the screen shape");
  }
  Complex total(0.0, 0.0);
  for (int j = 0; j < mesh.panel_count(); ++j) {
    total += density.coefficients[j] *
             inner_potential(k, mesh, j, lift(x), density.basis);
  }
  return total;
}

}  // namespace screenbem
