#pragma once

#include <optional>

#include "screenbem/farfield.hpp"

namespace screenbem {

struct SymmetryReport {
  double antisymmetry_defect = 0.0;  // max |(u(x)+u(x mirrored))/2| / max |u|
  bool antisymmetric = false;        // defect <= 1e-10
};

/// Probes the incident wave on quasi-random samples of a box straddling the
/// screen plane for the even-in-x3 part that makes scattering possible.
SymmetryReport antisymmetry_check(const IncidentWave& incident,
                                  const WaveNumber& k, const Vec3& box_lo,
                                  const Vec3& box_hi, int n_samples);

struct ReconstructionWindow {
  Vec2 lo, hi;
  int n = 0;  // n x n cells

  Vec2 cell_center(int ix, int iy) const {
    return Vec2(lo.x() + (ix + 0.5) * (hi.x() - lo.x()) / n,
                lo.y() + (iy + 0.5) * (hi.y() - lo.y()) / n);
  }
  double cell_area() const {
    return (hi.x() - lo.x()) * (hi.y() - lo.y()) / (static_cast<double>(n) * n);
  }
  static ReconstructionWindow around(const ScreenShape& shape, double scale,
                                     int n);
};

/// Band-limited inversion rho_rec(x) = (1/2pi) sum rho_hat(xi) e^{i xi.x} dxi^2.
struct AmplitudeField {
  ReconstructionWindow window;
  Eigen::VectorXcd values;     // row-major, iy * n + ix
  Eigen::VectorXd amplitude;   // |values|
};

AmplitudeField reconstruct_density(const DiskSpectrum& spectrum,
                                   const ReconstructionWindow& window);

struct SupportEstimate {
  ReconstructionWindow window;
  Eigen::VectorXd amplitude;
  std::vector<std::uint8_t> indicator;  // amplitude >= tau * max
  std::vector<std::uint8_t> retained;   // components >= 1% of marked area
  double threshold = 0.0;
  bool zero_field = false;
};

/// Thresholds the amplitude at tau * max and drops connected components
/// below 1% of the marked area (ring-lobe speckle). An amplitude maximum at
/// or below zero_tol raises the zero-field flag (degenerate incident wave).
SupportEstimate estimate_support(const AmplitudeField& field, double tau,
                                 double zero_tol = 0.0);

/// |A and B| / |A or B| of the retained mask against the true shape mask on
/// the same lattice.
double jaccard_index(const SupportEstimate& support, const ScreenShape& truth);

/// Distance between the outermost 0.75*max and 0.25*max crossings of the
/// amplitude along a ray from the window center; shrinks as k grows.
double rim_sharpness(const AmplitudeField& field, const Vec2& ray_direction);

struct UniquenessParams {
  double target_h = 0.2;
  double grading = 0.3;
  BasisKind basis = BasisKind::P0;
  int n_theta = 24;
  int n_phi = 48;
  double refine_factor = 1.35;  // noise floor re-solve: target_h / factor
};

struct UniquenessReport {
  bool degenerate = false;
  double antisymmetry_defect = 0.0;
  double farfield_distance_rel = 0.0;  // || ffA - ffB || / || ffA ||
  double noise_floor_rel = 0.0;        // refined re-solve of shape A
  double sup_farfield_a = 0.0;
  double sup_farfield_b = 0.0;
  double density_norm_a = 0.0;
  double density_norm_b = 0.0;
};

/// Solves both shapes with the same incident wave, compares far-fields on a
/// shared grid, and measures the discretization noise floor by re-solving
/// shape A on a refined mesh. Antisymmetric incident waves short-circuit the
/// comparison with a degeneracy verdict.
UniquenessReport uniqueness_experiment(const ScreenShape& shape_a,
                                       const ScreenShape& shape_b,
                                       const IncidentWave& incident,
                                       const WaveNumber& k,
                                       const UniquenessParams& params = {});

}  // namespace screenbem
