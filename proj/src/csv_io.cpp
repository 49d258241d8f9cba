#include "screenbem/csv_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace screenbem {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  return in;
}

std::vector<double> split_row(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    row.push_back(std::strtod(cell.c_str(), nullptr));
  }
  return row;
}

}  // namespace

void write_density_csv(const std::string& path, const Density& density) {
  auto out = open_out(path);
  out << "triangle index,centroid x1,centroid x2,Re c,Im c\n";
  for (int t = 0; t < density.mesh->panel_count(); ++t) {
    const auto& tri = density.mesh->triangles[t];
    out << t << ',' << fmt(tri.centroid.x()) << ',' << fmt(tri.centroid.y())
        << ',' << fmt(density.coefficients[t].real()) << ','
        << fmt(density.coefficients[t].imag()) << '\n';
  }
}

Eigen::VectorXcd read_density_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<Complex> coeffs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = split_row(line);
    if (row.size() != 5) {
      throw ValidationError("density csv: malformed row in " + path);
    }
    coeffs.emplace_back(row[3], row[4]);
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(coeffs.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = coeffs[i];
  return v;
}

void write_farfield_csv(const std::string& path, const FarField& ff) {
  auto out = open_out(path);
  out << "theta,phi,x1,x2,x3,Re u,Im u\n";
  for (int d = 0; d < ff.grid.size(); ++d) {
    const Vec3& dir = ff.grid.directions[d];
    const double theta = std::acos(std::clamp(dir.z(), -1.0, 1.0));
    double phi = std::atan2(dir.y(), dir.x());
    if (phi < 0.0) phi += 2.0 * kPi;
    out << fmt(theta) << ',' << fmt(phi) << ',' << fmt(dir.x()) << ','
        << fmt(dir.y()) << ',' << fmt(dir.z()) << ','
        << fmt(ff.values[d].real()) << ',' << fmt(ff.values[d].imag()) << '\n';
  }
}

FarField read_farfield_csv(const std::string& path, const WaveNumber& k) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::array<double, 7>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = split_row(line);
    if (row.size() != 7) {
      throw ValidationError("farfield csv: malformed row in " + path);
    }
    rows.push_back({row[0], row[1], row[2], row[3], row[4], row[5], row[6]});
  }
  if (rows.empty()) throw ValidationError("farfield csv: no samples in " + path);
  // Recover the product structure from unique theta/phi values.
  auto collect = [&](int col) {
    std::vector<double> vals;
    for (const auto& r : rows) {
      bool found = false;
      for (double v : vals) {
        if (std::abs(v - r[col]) < 1e-12) found = true;
      }
      if (!found) vals.push_back(r[col]);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
  };
  const auto thetas = collect(0);
  const auto phis = collect(1);
  if (thetas.size() * phis.size() != rows.size()) {
    throw ValidationError("farfield csv: not a product grid: " + path);
  }
  SphereGrid grid;
  grid.kind = SphereGrid::Kind::Hemisphere;
  grid.n_theta = static_cast<int>(thetas.size());
  grid.n_phi = static_cast<int>(phis.size());
  grid.thetas = thetas;
  grid.phis = phis;
  grid.directions.resize(rows.size());
  grid.weights.assign(rows.size(), 1.0);
  Eigen::VectorXcd values(static_cast<Eigen::Index>(rows.size()));
  auto index_of = [](const std::vector<double>& vals, double v) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (std::abs(vals[i] - v) < 1e-12) return static_cast<int>(i);
    }
    throw ValidationError("farfield csv: grid lookup failed");
  };
  for (const auto& r : rows) {
    const int i = index_of(thetas, r[0]);
    const int j = index_of(phis, r[1]);
    const int f = i * grid.n_phi + j;
    grid.directions[f] = Vec3(r[2], r[3], r[4]);
    values[f] = Complex(r[5], r[6]);
  }
  return FarField{std::move(grid), std::move(values), k};
}

void write_spectrum_csv(const std::string& path, const DiskSpectrum& spec) {
  auto out = open_out(path);
  out << "xi1,xi2,Re,Im\n";
  for (int iy = 0; iy < spec.n; ++iy) {
    for (int ix = 0; ix < spec.n; ++ix) {
      const int f = spec.flat(ix, iy);
      if (!spec.inside[f]) continue;
      const Vec2 xi = spec.xi(ix, iy);
      out << fmt(xi.x()) << ',' << fmt(xi.y()) << ','
          << fmt(spec.values[f].real()) << ',' << fmt(spec.values[f].imag())
          << '\n';
    }
  }
}

void write_support_csv(const std::string& path, const SupportEstimate& est) {
  auto out = open_out(path);
  out << "x1,x2,amplitude,indicator\n";
  const int m = est.window.n;
  for (int iy = 0; iy < m; ++iy) {
    for (int ix = 0; ix < m; ++ix) {
      const Vec2 c = est.window.cell_center(ix, iy);
      const int f = iy * m + ix;
      out << fmt(c.x()) << ',' << fmt(c.y()) << ',' << fmt(est.amplitude[f])
          << ',' << static_cast<int>(est.retained[f]) << '\n';
    }
  }
}

void write_asymptotics_csv(const std::string& path,
                           const AsymptoticsReport& report) {
  auto out = open_out(path);
  out << "r,error,error times r\n";
  for (const auto& row : report.rows) {
    out << fmt(row.radius) << ',' << fmt(row.error) << ','
        << fmt(row.error_times_r) << '\n';
  }
}

void write_mesh_csv(const std::string& vertex_path,
                    const std::string& triangle_path, const ScreenMesh& mesh) {
  {
    auto out = open_out(vertex_path);
    out << "vertex index,x1,x2\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      out << i << ',' << fmt(mesh.vertices[i].x()) << ','
          << fmt(mesh.vertices[i].y()) << '\n';
    }
  }
  auto out = open_out(triangle_path);
  out << "triangle index,v0,v1,v2,area,boundary distance\n";
  for (int t = 0; t < mesh.panel_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    out << t << ',' << tri.v[0] << ',' << tri.v[1] << ',' << tri.v[2] << ','
        << fmt(tri.area) << ',' << fmt(tri.boundary_distance) << '\n';
  }
}

void write_field_csv(const std::string& path,
                     const std::vector<std::pair<Vec3, Complex>>& samples) {
  auto out = open_out(path);
  out << "x,y,z,Re u,Im u\n";
  for (const auto& [x, u] : samples) {
    out << fmt(x.x()) << ',' << fmt(x.y()) << ',' << fmt(x.z()) << ','
        << fmt(u.real()) << ',' << fmt(u.imag()) << '\n';
  }
}

}  // namespace screenbem
