#pragma once

#include <cstdint>
#include <vector>

#include "screenbem/direct_solver.hpp"

namespace screenbem {

/// Directional grid on the upper hemisphere. Either a Gauss-Legendre (in
/// cos theta) x uniform (in phi) product grid, or the exact directions of a
/// Cartesian disk lattice xi with |xi| <= k (used when far-field samples
/// must line up with DiskSpectrum points).
struct SphereGrid {
  enum class Kind { Hemisphere, DiskAligned };
  Kind kind = Kind::Hemisphere;
  int n_theta = 0, n_phi = 0;
  int lattice_n = 0;
  double lattice_k = 0.0;
  std::vector<double> thetas;  // ascending
  std::vector<double> phis;
  std::vector<Vec3> directions;
  std::vector<double> weights;      // hemisphere surface measure; 1 otherwise
  std::vector<int> lattice_index;   // disk-aligned: flat lattice cell per row

  static SphereGrid hemisphere(int n_theta, int n_phi);
  static SphereGrid disk_aligned(const WaveNumber& k, int lattice_n);
  int size() const { return static_cast<int>(directions.size()); }
};

struct FarField {
  SphereGrid grid;
  Eigen::VectorXcd values;
  WaveNumber k;
};

/// Far-field samples of rho_hat(xi) on an n x n lattice over [-k,k]^2,
/// restricted to |xi| <= k; excluded lattice points hold zero.
struct DiskSpectrum {
  double k = 0.0;
  int n = 0;
  std::vector<std::uint8_t> inside;
  Eigen::VectorXcd values;

  double dxi() const { return n > 1 ? 2.0 * k / (n - 1) : 0.0; }
  Vec2 xi(int ix, int iy) const {
    return Vec2(-k + ix * dxi(), -k + iy * dxi());
  }
  int flat(int ix, int iy) const { return iy * n + ix; }
};

/// u_inf(xhat) = (1/4pi) <rho, e^{-ik xhat . y^0}>, regular quadrature.
FarField farfield_of_density(const Density& density, const WaveNumber& k,
                             const SphereGrid& grid);
Complex farfield_at(const Density& density, const WaveNumber& k,
                    const Vec3& direction);

/// rho_hat(xi) = (1/2pi) <rho, e^{-i xi . y'}> by direct panel quadrature;
/// the independent Fourier route used against the far-field identity.
Complex density_fourier(const Density& density, const Vec2& xi,
                        int quad_degree = 10);
DiskSpectrum spectrum_of_density(const Density& density, const WaveNumber& k,
                                 int lattice_n, int quad_degree = 10);

/// rho_hat(xi) = 2 u_inf(xi1/k, xi2/k, sqrt(k^2-|xi|^2)/k); bilinear
/// interpolation on hemisphere grids, exact lookup on disk-aligned grids
/// (which fix the lattice size). lattice_n = 0 picks a default.
DiskSpectrum spectrum_from_farfield(const FarField& ff, int lattice_n = 0);

struct AsymptoticsRow {
  double radius;
  double error;           // | r e^{-ikr} u_s(r xhat) - u_inf(xhat) |
  double error_times_r;
};

struct AsymptoticsReport {
  std::vector<AsymptoticsRow> rows;
  double slope = 0.0;  // log-log fit of error vs radius
};

AsymptoticsReport verify_asymptotics(const Density& density,
                                     const WaveNumber& k,
                                     const Vec3& direction,
                                     const std::vector<double>& radii);

}  // namespace screenbem
