#include "screenbem/farfield.hpp"

#include <algorithm>
#include <cmath>

#include "screenbem/parallel.hpp"

namespace screenbem {

SphereGrid SphereGrid::hemisphere(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2) {
    throw ValidationError("farfield grid: need at least 2x2 directions");
  }
  SphereGrid grid;
  grid.kind = Kind::Hemisphere;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  std::vector<double> u, w;
  gauss_legendre(n_theta, u, w);
  // Map cos(theta) nodes from [-1,1] to (0,1); ascending theta.
  std::vector<std::pair<double, double>> cosw(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    cosw[i] = {0.5 * (u[i] + 1.0), 0.5 * w[i]};
  }
  std::sort(cosw.begin(), cosw.end(),
            [](auto& a, auto& b) { return a.first > b.first; });
  grid.thetas.resize(n_theta);
  grid.phis.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) grid.phis[j] = 2.0 * kPi * j / n_phi;
  grid.directions.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  grid.weights.reserve(grid.directions.capacity());
  for (int i = 0; i < n_theta; ++i) {
    const double ct = cosw[i].first;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    grid.thetas[i] = std::acos(ct);
    for (int j = 0; j < n_phi; ++j) {
      grid.directions.emplace_back(st * std::cos(grid.phis[j]),
                                   st * std::sin(grid.phis[j]), ct);
      grid.weights.push_back(cosw[i].second * 2.0 * kPi / n_phi);
    }
  }
  return grid;
}

SphereGrid SphereGrid::disk_aligned(const WaveNumber& k, int lattice_n) {
  if (k.is_static()) {
    throw ValidationError("farfield grid: static mode has no far-field");
  }
  if (lattice_n < 2) throw ValidationError("farfield grid: lattice too small");
  SphereGrid grid;
  grid.kind = Kind::DiskAligned;
  grid.lattice_n = lattice_n;
  grid.lattice_k = k.value();
  const double dxi = 2.0 * k.value() / (lattice_n - 1);
  for (int iy = 0; iy < lattice_n; ++iy) {
    for (int ix = 0; ix < lattice_n; ++ix) {
      const Vec2 xi(-k.value() + ix * dxi, -k.value() + iy * dxi);
      if (xi.norm() > k.value() * (1.0 + 1e-14)) continue;
      const double x3 =
          std::sqrt(std::max(0.0, 1.0 - xi.squaredNorm() /
                                            (k.value() * k.value())));
      grid.directions.emplace_back(xi.x() / k.value(), xi.y() / k.value(), x3);
      grid.weights.push_back(1.0);
      grid.lattice_index.push_back(iy * lattice_n + ix);
    }
  }
  return grid;
}

namespace {

constexpr int kFarfieldDegree = 6;

void require_scattering_mode(const WaveNumber& k, const char* op) {
  if (k.is_static() || k.value() <= 0.0) {
    throw ValidationError(std::string(op) +
                          ": static-mode wavenumber is validation-only");
  }
}

// int_T e^{-i xi . y} w(y) dy by a regular rule.
Complex panel_phase_integral(const Density& density, int t, const Vec2& xi,
                             int degree) {
  const auto tri = density.mesh->triangle_vertices(t);
  const QuadratureRule& rule = triangle_rule(degree);
  Complex acc(0.0, 0.0);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Vec2 y = barycentric_point(tri, rule.nodes[q]);
    acc += rule.weights[q] * density.weight_at(t, y) *
           std::exp(Complex(0.0, -xi.dot(y)));
  }
  return density.mesh->triangles[t].area * acc;
}

}  // namespace

Complex farfield_at(const Density& density, const WaveNumber& k,
                    const Vec3& direction) {
  require_scattering_mode(k, "farfield");
  const Vec2 xi = k.value() * Vec2(direction.x(), direction.y());
  Complex acc(0.0, 0.0);
  for (int t = 0; t < density.mesh->panel_count(); ++t) {
    acc += density.coefficients[t] *
           panel_phase_integral(density, t, xi, kFarfieldDegree);
  }
  return acc / (4.0 * kPi);
}

FarField farfield_of_density(const Density& density, const WaveNumber& k,
                             const SphereGrid& grid) {
  require_scattering_mode(k, "farfield_of_density");
  FarField ff{grid, Eigen::VectorXcd(grid.size()), k};
  parallel_for(static_cast<std::size_t>(grid.size()),
               [&](std::size_t lo, std::size_t hi) {
                 for (std::size_t d = lo; d < hi; ++d) {
                   ff.values[d] = farfield_at(density, k, grid.directions[d]);
                 }
               });
  return ff;
}

Complex density_fourier(const Density& density, const Vec2& xi,
                        int quad_degree) {
  Complex acc(0.0, 0.0);
  for (int t = 0; t < density.mesh->panel_count(); ++t) {
    acc += density.coefficients[t] *
           panel_phase_integral(density, t, xi, quad_degree);
  }
  return acc / (2.0 * kPi);
}

DiskSpectrum spectrum_of_density(const Density& density, const WaveNumber& k,
                                 int lattice_n, int quad_degree) {
  require_scattering_mode(k, "spectrum_of_density");
  DiskSpectrum spec{k.value(), lattice_n,
                    std::vector<std::uint8_t>(
                        static_cast<std::size_t>(lattice_n) * lattice_n, 0),
                    Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(lattice_n) *
                                           lattice_n)};
  parallel_for(static_cast<std::size_t>(lattice_n),
               [&](std::size_t lo, std::size_t hi) {
                 for (std::size_t iy = lo; iy < hi; ++iy) {
                   for (int ix = 0; ix < lattice_n; ++ix) {
                     const Vec2 xi = spec.xi(ix, static_cast<int>(iy));
                     if (xi.norm() > spec.k * (1.0 + 1e-14)) continue;
                     const int f = spec.flat(ix, static_cast<int>(iy));
                     spec.inside[f] = 1;
                     spec.values[f] = density_fourier(density, xi, quad_degree);
                   }
                 }
               });
  return spec;
}

namespace {

Complex sample_hemisphere(const FarField& ff, double theta, double phi) {
  const SphereGrid& g = ff.grid;
  const auto& th = g.thetas;
  // Clamped linear interpolation in theta.
  int i0 = 0;
  const int nt = g.n_theta;
  while (i0 + 1 < nt && th[i0 + 1] < theta) ++i0;
  int i1 = std::min(i0 + 1, nt - 1);
  double ft = 0.0;
  if (i1 != i0 && th[i1] > th[i0]) {
    ft = std::clamp((theta - th[i0]) / (th[i1] - th[i0]), 0.0, 1.0);
  }
  // Periodic linear interpolation in phi.
  const int np = g.n_phi;
  const double dphi = 2.0 * kPi / np;
  double p = phi / dphi;
  p -= std::floor(p / np) * np;
  const int j0 = static_cast<int>(std::floor(p)) % np;
  const int j1 = (j0 + 1) % np;
  const double fp = p - std::floor(p);
  auto at = [&](int i, int j) { return ff.values[i * np + j]; };
  return (1.0 - ft) * ((1.0 - fp) * at(i0, j0) + fp * at(i0, j1)) +
         ft * ((1.0 - fp) * at(i1, j0) + fp * at(i1, j1));
}

}  // namespace

DiskSpectrum spectrum_from_farfield(const FarField& ff, int lattice_n) {
  require_scattering_mode(ff.k, "spectrum_from_farfield");
  const double k = ff.k.value();
  const int n = ff.grid.kind == SphereGrid::Kind::DiskAligned
                    ? ff.grid.lattice_n
                    : (lattice_n > 1 ? lattice_n
                                     : std::max(33, 2 * ff.grid.n_theta + 1));
  DiskSpectrum spec{
      k, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0),
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n)};
  if (ff.grid.kind == SphereGrid::Kind::DiskAligned) {
    for (int row = 0; row < ff.grid.size(); ++row) {
      const int f = ff.grid.lattice_index[row];
      spec.inside[f] = 1;
      spec.values[f] = 2.0 * ff.values[row];
    }
    return spec;
  }
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const Vec2 xi = spec.xi(ix, iy);
      if (xi.norm() > k * (1.0 + 1e-14)) continue;  // never extrapolated
      const double s = std::min(1.0, xi.norm() / k);
      const double theta = std::asin(s);
      const double phi = std::atan2(xi.y(), xi.x());
      const int f = spec.flat(ix, iy);
      spec.inside[f] = 1;
      spec.values[f] = 2.0 * sample_hemisphere(ff, theta, phi);
    }
  }
  return spec;
}

AsymptoticsReport verify_asymptotics(const Density& density,
                                     const WaveNumber& k,
                                     const Vec3& direction,
                                     const std::vector<double>& radii) {
  require_scattering_mode(k, "verify_asymptotics");
  if (radii.size() < 2) {
    throw ValidationError("verify_asymptotics: need at least two radii");
  }
  const Vec3 dir = direction.normalized();
  const Complex uinf = farfield_at(density, k, dir);
  AsymptoticsReport report;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int fitted = 0;
  for (double r : radii) {
    const Complex us = scattered_field(density, k, r * dir);
    const Complex scaled = r * std::exp(Complex(0.0, -k.value() * r)) * us;
    const double err = std::abs(scaled - uinf);
    report.rows.push_back({r, err, err * r});
    if (err > 0.0) {
      const double lx = std::log(r), ly = std::log(err);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++fitted;
    }
  }
  if (fitted >= 2) {
    report.slope = (fitted * sxy - sx * sy) / (fitted * sxx - sx * sx);
  }
  return report;
}

}  // namespace screenbem
