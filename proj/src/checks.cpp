#include "screenbem/checks.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "screenbem/farfield.hpp"
#include "screenbem/inverse.hpp"

namespace screenbem {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

// Second-order 7-point Laplacian; residual of (lap + k^2) phi decays as h^2.
Complex fd_helmholtz_residual(const WaveNumber& k, const Vec3& x,
                              const Vec3& y, double h) {
  Complex lap(0.0, 0.0);
  const Complex center = phi(k, x, y);
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e = Vec3::Zero();
    e[axis] = h;
    lap += (phi(k, x + e, y) - 2.0 * center + phi(k, x - e, y)) / (h * h);
  }
  return lap + k.value() * k.value() * center;
}

CheckResult kernel_symmetry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const WaveNumber k(3.7);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Vec3 x(u(rng), u(rng), u(rng));
    const Vec3 y(u(rng), u(rng), u(rng));
    if ((x - y).norm() < 1e-6) continue;
    worst = std::max(worst, std::abs(phi(k, x, y) - phi(k, y, x)));
  }
  return {"kernel symmetry", worst == 0.0, "max |phi(x,y)-phi(y,x)| = " + num(worst)};
}

CheckResult helmholtz_fd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const WaveNumber k(2.4);
  const Vec3 y(u(rng), u(rng), u(rng));
  Vec3 x = y + Vec3(1.1, 0.4, -0.7);
  const double h1 = 2e-2, h2 = 1e-2;
  const double r1 = std::abs(fd_helmholtz_residual(k, x, y, h1));
  const double r2 = std::abs(fd_helmholtz_residual(k, x, y, h2));
  const double order = std::log(r1 / r2) / std::log(h1 / h2);
  const bool pass = order > 1.5 && order < 2.5 && r2 < 1.0;
  return {"helmholtz finite-difference", pass, "observed order " + num(order)};
}

CheckResult quadrature_exactness() {
  // Reference-triangle monomial integrals: a! b! / (a+b+2)!.
  auto exact = [](int a, int b) {
    double v = 1.0;
    for (int i = 1; i <= a; ++i) v *= i;
    for (int i = 1; i <= b; ++i) v *= i;
    for (int i = 1; i <= a + b + 2; ++i) v /= i;
    return v;
  };
  double worst = 0.0;
  for (int degree : {2, 4, 6, 8}) {
    const QuadratureRule& rule = triangle_rule(degree);
    for (double w : rule.weights) {
      if (!(w > 0.0)) return {"quadrature exactness", false, "negative weight"};
    }
    for (int a = 0; a + 0 <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double x = rule.nodes[q][1], y = rule.nodes[q][2];
          acc += rule.weights[q] * std::pow(x, a) * std::pow(y, b);
        }
        worst = std::max(worst, std::abs(0.5 * acc - exact(a, b)));
      }
    }
  }
  return {"quadrature exactness", worst < 1e-14, "max monomial error " + num(worst)};
}

CheckResult singular_quadrature_convergence() {
  const std::array<Vec2, 3> tri{Vec2(0.0, 0.0), Vec2(0.9, 0.1), Vec2(0.3, 0.8)};
  const Vec2 x = (tri[0] + tri[1] + tri[2]) / 3.0;
  const WaveNumber k(2.0);
  const Complex coarse = singular_panel_integral(k, tri, x, 16);
  const Complex fine = singular_panel_integral(k, tri, x, 32);
  const double rel = std::abs(coarse - fine) / std::abs(fine);
  return {"singular quadrature convergence", rel < 1e-8,
          "self-term refinement delta " + num(rel)};
}

CheckResult matrix_symmetry() {
  const auto mesh = mesh_shape_shared(ScreenShape::disk(1.0), 0.45, 0.0);
  const WaveNumber k(2.0);
  const auto sys = assemble(k, mesh, IncidentWave::plane(Vec3(0, 0, 1)));
  const double asym = (sys.matrix - sys.matrix.transpose()).cwiseAbs().maxCoeff();
  const double scale = sys.matrix.cwiseAbs().maxCoeff();
  // Independent orderings of a separated pair must agree as well.
  int a = -1, b = -1;
  double best = 0.0;
  for (int i = 0; i < mesh->panel_count(); ++i) {
    for (int j = 0; j < mesh->panel_count(); ++j) {
      const double d =
          (mesh->triangles[i].centroid - mesh->triangles[j].centroid).norm();
      if (d > best) {
        best = d;
        a = i;
        b = j;
      }
    }
  }
  const Complex eab = galerkin_entry(k, *mesh, a, b);
  const Complex eba = galerkin_entry(k, *mesh, b, a);
  const double swap_rel = std::abs(eab - eba) / std::abs(eab);
  const bool pass = asym <= 1e-10 * scale && swap_rel <= 1e-10;
  return {"matrix complex-symmetry", pass,
          "asymmetry " + num(asym / scale) + ", swapped entry " + num(swap_rel)};
}

CheckResult solver_residual_linearity(std::mt19937_64& rng) {
  const auto mesh = mesh_shape_shared(ScreenShape::disk(1.0), 0.45, 0.0);
  const WaveNumber k(2.0);
  const IncidentWave wave = IncidentWave::plane(Vec3(0.3, -0.2, 0.93));
  SolveInfo info;
  const auto sys = assemble(k, mesh, wave);
  const Density base = solve(sys, &info);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Complex alpha(u(rng), u(rng));
  const Density scaled =
      solve(assemble(k, mesh, IncidentWave::plane(Vec3(0.3, -0.2, 0.93),
                                                  alpha)));
  const double lin = (scaled.coefficients - alpha * base.coefficients).norm() /
                     (std::abs(alpha) * base.coefficients.norm());
  const bool pass = info.relative_residual <= 1e-10 && lin <= 1e-12;
  return {"solver residual and linearity", pass,
          "residual " + num(info.relative_residual) + ", linearity " + num(lin)};
}

CheckResult threshold_monotonicity(std::mt19937_64& rng) {
  ReconstructionWindow window{Vec2(-1, -1), Vec2(1, 1), 40};
  AmplitudeField field{window, Eigen::VectorXcd::Zero(1600),
                       Eigen::VectorXd(1600)};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1600; ++i) field.amplitude[i] = u(rng);
  const auto loose = estimate_support(field, 0.2);
  const auto tight = estimate_support(field, 0.6);
  for (int i = 0; i < 1600; ++i) {
    if (tight.indicator[i] && !loose.indicator[i]) {
      return {"threshold monotonicity", false, "indicator sets not nested"};
    }
  }
  return {"threshold monotonicity", true, "nested over tau 0.2 -> 0.6"};
}

CheckResult translation_covariance() {
  const Vec2 shift(0.5, 0.3);
  const ScreenShape disk = ScreenShape::disk(1.0);
  const ScreenShape moved = disk.translated(shift);
  const WaveNumber k(3.0);
  const IncidentWave wave = IncidentWave::plane(Vec3(0, 0, 1));
  const Density rho_a = solve(assemble(k, mesh_shape_shared(disk, 0.4, 0.0), wave));
  const Density rho_b = solve(assemble(k, mesh_shape_shared(moved, 0.4, 0.0), wave));
  double worst = 0.0;
  for (const Vec2& xi : {Vec2(0.5, 0.2), Vec2(-1.0, 2.0), Vec2(2.4, -0.7)}) {
    const Complex fa = density_fourier(rho_a, xi);
    const Complex fb = density_fourier(rho_b, xi);
    const Complex predicted = fa * std::exp(Complex(0.0, -xi.dot(shift)));
    worst = std::max(worst, std::abs(fb - predicted) / std::abs(fa));
  }
  return {"translation covariance", worst < 1e-10,
          "max phase-law violation " + num(worst)};
}

CheckResult determinism() {
  auto fingerprint = [] {
    const auto mesh = mesh_shape_shared(ScreenShape::ellipse(1.2, 0.8), 0.45, 0.5);
    const WaveNumber k(2.5);
    const Density rho =
        solve(assemble(k, mesh, IncidentWave::plane(Vec3(0.1, 0.2, 0.97))));
    const FarField ff = farfield_of_density(rho, k, SphereGrid::hemisphere(6, 12));
    std::ostringstream s;
    s.precision(17);
    for (int i = 0; i < ff.values.size(); ++i) {
      s << ff.values[i].real() << ' ' << ff.values[i].imag() << ' ';
    }
    return s.str();
  };
  const std::string a = fingerprint();
  const std::string b = fingerprint();
  return {"determinism", a == b,
          a == b ? "repeated runs bit-identical" : "outputs differ"};
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> results;
  results.push_back(kernel_symmetry(rng));
  results.push_back(helmholtz_fd(rng));
  results.push_back(quadrature_exactness());
  results.push_back(singular_quadrature_convergence());
  results.push_back(matrix_symmetry());
  results.push_back(solver_residual_linearity(rng));
  results.push_back(threshold_monotonicity(rng));
  results.push_back(translation_covariance());
  results.push_back(determinism());
  return results;
}

}  // namespace screenbem
