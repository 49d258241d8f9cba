#pragma once

#include <memory>

#include "screenbem/geometry.hpp"
#include "screenbem/incident.hpp"
#include "screenbem/kernel.hpp"

namespace screenbem {

enum class BasisKind { P0, P0w };

/// Discrete jump density rho = d3 u_s^+ - d3 u_s^- in a piecewise-constant
/// basis, optionally carrying the rim weight 1/sqrt(max(d, eps_d)).
struct Density {
  std::shared_ptr<const ScreenMesh> mesh;
  Eigen::VectorXcd coefficients;
  BasisKind basis = BasisKind::P0;

  /// Basis weight at a point of triangle t (barycentric interpolation of the
  /// vertex boundary distances under the P0w weight).
  double weight_at(int t, const Vec2& y) const;
  Complex value_at(int t, const Vec2& y) const;
  /// sum_j c_j int_Tj w dy; equals the plain area-weighted sum for P0.
  Complex total_mass() const;
  /// Basis-function masses int_Tj w dy.
  Eigen::VectorXd basis_masses() const;
};

/// Dense complex-symmetric Galerkin system for the single-layer equation:
/// matrix(i,j) = <S phi_j, phi_i>, rhs(i) = -<u_i, phi_i>.
struct LinearSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  BasisKind basis;
  std::shared_ptr<const ScreenMesh> mesh;
  WaveNumber k;
};

LinearSystem assemble(const WaveNumber& k,
                      std::shared_ptr<const ScreenMesh> mesh,
                      const IncidentWave& incident,
                      BasisKind basis = BasisKind::P0);

struct SolveInfo {
  double relative_residual = 0.0;
  double condition_estimate = 0.0;
};

/// Dense LU with partial pivoting. Throws NumericalError when the condition
/// estimate exceeds 1e14 or the residual misses the 1e-10 contract.
Density solve(const LinearSystem& system, SolveInfo* info = nullptr);

/// Single-layer potential of the density at x off the closed screen.
Complex scattered_field(const Density& density, const WaveNumber& k,
                        const Vec3& x);

/// Single-layer trace at a point strictly inside the shape.
Complex trace_on_screen(const Density& density, const WaveNumber& k,
                        const Vec2& x);

/// One Galerkin entry, outer integral over panel a, inner over panel b.
/// Exposed for the kernel-symmetry tests; assemble() evaluates each unordered
/// pair once in canonical order, which keeps the matrix exactly symmetric.
Complex galerkin_entry(const WaveNumber& k, const ScreenMesh& mesh, int a,
                       int b, BasisKind basis = BasisKind::P0);

}  // namespace screenbem
