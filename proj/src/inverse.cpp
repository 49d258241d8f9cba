#include "screenbem/inverse.hpp"

#include <cmath>
#include <queue>

#include "screenbem/parallel.hpp"

namespace screenbem {

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

}  // namespace

SymmetryReport antisymmetry_check(const IncidentWave& incident,
                                  const WaveNumber& k, const Vec3& box_lo,
                                  const Vec3& box_hi, int n_samples) {
  if (!(box_lo.z() < 0.0 && box_hi.z() > 0.0)) {
    throw ValidationError(
        "antisymmetry_check: sample box must straddle the screen plane");
  }
  if (n_samples < 1) throw ValidationError("antisymmetry_check: no samples");
  double max_u = 0.0, max_even = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const Vec3 x(box_lo.x() + halton(i + 1, 2) * (box_hi.x() - box_lo.x()),
                 box_lo.y() + halton(i + 1, 3) * (box_hi.y() - box_lo.y()),
                 box_lo.z() + halton(i + 1, 5) * (box_hi.z() - box_lo.z()));
    const Vec3 xm(x.x(), x.y(), -x.z());
    const Complex u = incident.value(k, x);
    const Complex um = incident.value(k, xm);
    max_u = std::max({max_u, std::abs(u), std::abs(um)});
    max_even = std::max(max_even, 0.5 * std::abs(u + um));
  }
  SymmetryReport report;
  report.antisymmetry_defect = max_u > 0.0 ? max_even / max_u : 0.0;
  report.antisymmetric = report.antisymmetry_defect <= 1e-10;
  return report;
}

ReconstructionWindow ReconstructionWindow::around(const ScreenShape& shape,
                                                  double scale, int n) {
  Vec2 lo, hi;
  shape.bounding_box(lo, hi);
  const Vec2 c = 0.5 * (lo + hi);
  const Vec2 half = 0.5 * scale * (hi - lo);
  return ReconstructionWindow{c - half, c + half, n};
}

AmplitudeField reconstruct_density(const DiskSpectrum& spectrum,
                                   const ReconstructionWindow& window) {
  const int n = spectrum.n;
  if (n < 2 || spectrum.values.size() == 0) {
    throw ValidationError("reconstruct_density: empty spectrum");
  }
  bool any = false;
  for (auto v : spectrum.inside) any = any || v;
  if (!any) throw ValidationError("reconstruct_density: empty spectrum");
  const int m = window.n;
  if (m < 2) throw ValidationError("reconstruct_density: window too small");

  AmplitudeField field{window,
                       Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m) * m),
                       Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m) * m)};
  const double dxi = spectrum.dxi();
  const double scale = dxi * dxi / (2.0 * kPi);

  // Separable sum: partial transforms over xi2 per (xi1, row), then over xi1.
  Eigen::MatrixXcd partial(n, m);  // (ix_lattice, iy_window)
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      for (int iy = 0; iy < m; ++iy) {
        const double y = window.cell_center(0, iy).y();
        Complex acc(0.0, 0.0);
        for (int jy = 0; jy < n; ++jy) {
          const int f = spectrum.flat(static_cast<int>(ix), jy);
          if (!spectrum.inside[f]) continue;
          const double xi2 = -spectrum.k + jy * dxi;
          acc += spectrum.values[f] * std::exp(Complex(0.0, xi2 * y));
        }
        partial(static_cast<Eigen::Index>(ix), iy) = acc;
      }
    }
  });
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy) {
      for (int ix = 0; ix < m; ++ix) {
        const double x = window.cell_center(ix, 0).x();
        Complex acc(0.0, 0.0);
        for (int jx = 0; jx < n; ++jx) {
          const double xi1 = -spectrum.k + jx * dxi;
          acc += partial(jx, static_cast<Eigen::Index>(iy)) *
                 std::exp(Complex(0.0, xi1 * x));
        }
        const Eigen::Index f = static_cast<Eigen::Index>(iy) * m + ix;
        field.values[f] = scale * acc;
        field.amplitude[f] = std::abs(field.values[f]);
      }
    }
  });
  return field;
}

SupportEstimate estimate_support(const AmplitudeField& field, double tau,
                                 double zero_tol) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw ValidationError("estimate_support: tau must lie in (0,1)");
  }
  const int m = field.window.n;
  SupportEstimate est{field.window, field.amplitude,
                      std::vector<std::uint8_t>(field.amplitude.size(), 0),
                      std::vector<std::uint8_t>(field.amplitude.size(), 0),
                      tau, false};
  const double max_amp = field.amplitude.maxCoeff();
  if (max_amp <= zero_tol) {
    est.zero_field = true;
    return est;
  }
  const double cut = tau * max_amp;
  long marked = 0;
  for (Eigen::Index i = 0; i < field.amplitude.size(); ++i) {
    if (field.amplitude[i] >= cut) {
      est.indicator[i] = 1;
      ++marked;
    }
  }
  // Connected components (4-neighbour); keep those above 1% of marked area.
  std::vector<int> label(est.indicator.size(), -1);
  std::vector<long> component_size;
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) {
      const int f = iy * m + ix;
      if (!est.indicator[f] || label[f] >= 0) continue;
      const int id = static_cast<int>(component_size.size());
      long size = 0;
      std::queue<int> queue;
      queue.push(f);
      label[f] = id;
      while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop();
        ++size;
        const int cx = cur % m, cy = cur / m;
        const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nb) {
          const int nx = cx + d[0], ny = cy + d[1];
          if (nx < 0 || ny < 0 || nx >= m || ny >= m) continue;
          const int g = ny * m + nx;
          if (est.indicator[g] && label[g] < 0) {
            label[g] = id;
            queue.push(g);
          }
        }
      }
      component_size.push_back(size);
    }
  }
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(label.size()); ++i) {
    if (label[i] >= 0 &&
        component_size[label[i]] >= 0.01 * static_cast<double>(marked)) {
      est.retained[i] = 1;
    }
  }
  return est;
}

double jaccard_index(const SupportEstimate& support, const ScreenShape& truth) {
  const int m = support.window.n;
  long inter = 0, uni = 0;
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) {
      const bool a = support.retained[iy * m + ix] != 0;
      const bool b = truth.contains(support.window.cell_center(ix, iy));
      if (a && b) ++inter;
      if (a || b) ++uni;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

double rim_sharpness(const AmplitudeField& field, const Vec2& ray_direction) {
  const Vec2 dir = ray_direction.normalized();
  const Vec2 center = 0.5 * (field.window.lo + field.window.hi);
  const double max_amp = field.amplitude.maxCoeff();
  if (max_amp <= 0.0) return 0.0;
  const int m = field.window.n;
  const Vec2 span = field.window.hi - field.window.lo;
  auto sample = [&](const Vec2& p) -> double {
    // Bilinear on cell centers, clamped.
    const double gx = (p.x() - field.window.lo.x()) / span.x() * m - 0.5;
    const double gy = (p.y() - field.window.lo.y()) / span.y() * m - 0.5;
    const int ix = std::clamp(static_cast<int>(std::floor(gx)), 0, m - 2);
    const int iy = std::clamp(static_cast<int>(std::floor(gy)), 0, m - 2);
    const double fx = std::clamp(gx - ix, 0.0, 1.0);
    const double fy = std::clamp(gy - iy, 0.0, 1.0);
    auto at = [&](int x, int y) { return field.amplitude[y * m + x]; };
    return (1 - fx) * (1 - fy) * at(ix, iy) + fx * (1 - fy) * at(ix + 1, iy) +
           (1 - fx) * fy * at(ix, iy + 1) + fx * fy * at(ix + 1, iy + 1);
  };
  // Walk inward from the window edge; the first 0.25 and 0.75 crossings of
  // the falling rim flank bracket the blur width.
  const double r_max = 0.5 * std::min(span.x(), span.y()) * 0.999;
  const int steps = 4 * m;
  double r25 = -1.0, r75 = -1.0;
  for (int i = steps; i >= 0; --i) {
    const double r = r_max * i / steps;
    const double a = sample(center + r * dir);
    if (r25 < 0.0 && a >= 0.25 * max_amp) r25 = r;
    if (a >= 0.75 * max_amp) {
      r75 = r;
      break;
    }
  }
  if (r25 < 0.0 || r75 < 0.0) return r_max;
  return std::max(0.0, r25 - r75);
}

UniquenessReport uniqueness_experiment(const ScreenShape& shape_a,
                                       const ScreenShape& shape_b,
                                       const IncidentWave& incident,
                                       const WaveNumber& k,
                                       const UniquenessParams& params) {
  UniquenessReport report;
  {
    Vec2 lo_a, hi_a, lo_b, hi_b;
    shape_a.bounding_box(lo_a, hi_a);
    shape_b.bounding_box(lo_b, hi_b);
    const Vec2 lo = lo_a.cwiseMin(lo_b);
    const Vec2 hi = hi_a.cwiseMax(hi_b);
    const SymmetryReport sym = antisymmetry_check(
        incident, k, Vec3(lo.x(), lo.y(), -1.0), Vec3(hi.x(), hi.y(), 1.0),
        512);
    report.degenerate = sym.antisymmetric;
    report.antisymmetry_defect = sym.antisymmetry_defect;
  }

  const SphereGrid grid = SphereGrid::hemisphere(params.n_theta, params.n_phi);
  auto run = [&](const ScreenShape& shape, double h) {
    const auto mesh = mesh_shape_shared(shape, h, params.grading);
    const Density density = solve(assemble(k, mesh, incident, params.basis));
    return std::make_pair(farfield_of_density(density, k, grid),
                          density.coefficients.norm());
  };
  const auto [ff_a, norm_a] = run(shape_a, params.target_h);
  const auto [ff_b, norm_b] = run(shape_b, params.target_h);
  report.density_norm_a = norm_a;
  report.density_norm_b = norm_b;
  report.sup_farfield_a = ff_a.values.cwiseAbs().maxCoeff();
  report.sup_farfield_b = ff_b.values.cwiseAbs().maxCoeff();

  auto weighted_norm = [&](const Eigen::VectorXcd& v) {
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      acc += grid.weights[i] * std::norm(v[i]);
    }
    return std::sqrt(acc);
  };
  const double norm_ffa = weighted_norm(ff_a.values);
  if (report.degenerate) {
    // Theorem branch: both far-fields vanish; no distance comparison.
    return report;
  }
  report.farfield_distance_rel =
      norm_ffa > 0.0 ? weighted_norm(ff_a.values - ff_b.values) / norm_ffa
                     : 0.0;
  const auto [ff_ref, norm_ref] =
      run(shape_a, params.target_h / params.refine_factor);
  report.noise_floor_rel =
      norm_ffa > 0.0 ? weighted_norm(ff_a.values - ff_ref.values) / norm_ffa
                     : 0.0;
  return report;
}

}  // namespace screenbem
