// Experiment runner: direct solves, far fields, band-limited shape
// reconstruction, and the uniqueness/degeneracy experiments, driven by a
// JSON config. Exit codes: 0 success, 1 validation error, 2 numerical
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "screenbem/checks.hpp"
#include "screenbem/config.hpp"
#include "screenbem/csv_io.hpp"
#include "screenbem/parallel.hpp"

namespace fs = std::filesystem;
using namespace screenbem;

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_override;
  std::int64_t seed_override = -1;
  int threads = 0;
  bool verify_asymptotics = false;
};

ExperimentConfig load(const CliOptions& opt) {
  ExperimentConfig cfg = load_config(opt.config_path);
  if (!opt.out_override.empty()) cfg.output_dir = opt.out_override;
  if (opt.seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed_override);
  if (opt.threads > 0) cfg.threads = opt.threads;
  if (opt.verify_asymptotics) cfg.verify_asymptotics = true;
  set_thread_count(cfg.threads);
  fs::create_directories(cfg.output_dir);
  return cfg;
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

Json density_metrics(const ExperimentConfig& cfg, const ScreenShape& shape,
                     const Density& density, const SolveInfo& info,
                     const WaveNumber& k, const IncidentWave& wave) {
  Vec2 lo, hi;
  shape.bounding_box(lo, hi);
  const SymmetryReport sym = antisymmetry_check(
      wave, k, Vec3(lo.x(), lo.y(), -1.0), Vec3(hi.x(), hi.y(), 1.0), 512);

  // Boundary-condition residual |trace + u_i| at quasi-random interior points.
  double max_residual = 0.0;
  int used = 0;
  for (int i = 1; used < 20 && i < 4000; ++i) {
    auto halton = [](int index, int base) {
      double f = 1.0, r = 0.0;
      for (int v = index; v > 0; v /= base) {
        f /= base;
        r += f * (v % base);
      }
      return r;
    };
    const Vec2 p(lo.x() + halton(i, 2) * (hi.x() - lo.x()),
                 lo.y() + halton(i, 3) * (hi.y() - lo.y()));
    if (!shape.contains(p) || shape.boundary_distance(p) < 0.05 * cfg.target_h) {
      continue;
    }
    ++used;
    const Complex trace = trace_on_screen(density, k, p);
    max_residual = std::max(max_residual,
                            std::abs(trace + wave.value(k, lift(p))));
  }

  Json m;
  m["panel_count"] = density.mesh->panel_count();
  m["solver_residual"] = info.relative_residual;
  m["condition_estimate"] = info.condition_estimate;
  m["density_norm"] = density.coefficients.norm();
  m["density_total_mass"] = Json::array(
      {density.total_mass().real(), density.total_mass().imag()});
  m["boundary_residual_max"] = max_residual;
  m["antisymmetry_defect"] = sym.antisymmetry_defect;
  m["degenerate_incident_wave"] = sym.antisymmetric;
  return m;
}

int cmd_solve(const CliOptions& opt) {
  const ExperimentConfig cfg = load(opt);
  const ScreenShape shape = cfg.shape.build();
  const WaveNumber k = cfg.wave();
  const IncidentWave wave = cfg.incident_wave.build();
  const auto mesh = mesh_shape_shared(shape, cfg.target_h, cfg.grading);
  SolveInfo info;
  const Density density = solve(assemble(k, mesh, wave, cfg.basis), &info);

  const fs::path out(cfg.output_dir);
  write_density_csv((out / "density.csv").string(), density);
  write_mesh_csv((out / "mesh_vertices.csv").string(),
                 (out / "mesh_triangles.csv").string(), *mesh);
  const Json metrics = density_metrics(cfg, shape, density, info, k, wave);
  write_json((out / "solve_metrics.json").string(), metrics);
  if (metrics["degenerate_incident_wave"].get<bool>()) {
    std::cerr << "warning: degenerate incident wave (antisymmetric); "
                 "density norm " << density.coefficients.norm() << "\n";
  }
  std::cout << "solve: " << mesh->panel_count() << " panels, residual "
            << info.relative_residual << "\n";
  return 0;
}

int cmd_farfield(const CliOptions& opt) {
  const ExperimentConfig cfg = load(opt);
  const ScreenShape shape = cfg.shape.build();
  const WaveNumber k = cfg.wave();
  const IncidentWave wave = cfg.incident_wave.build();
  const auto mesh = mesh_shape_shared(shape, cfg.target_h, cfg.grading);

  Density density{mesh, Eigen::VectorXcd(), cfg.basis};
  if (cfg.density_csv) {
    density.coefficients = read_density_csv(*cfg.density_csv);
    if (density.coefficients.size() != mesh->panel_count()) {
      throw ValidationError("density file row count does not match the mesh: " +
                            *cfg.density_csv);
    }
  } else {
    density = solve(assemble(k, mesh, wave, cfg.basis));
  }

  const SphereGrid grid = SphereGrid::hemisphere(cfg.n_theta, cfg.n_phi);
  const FarField ff = farfield_of_density(density, k, grid);
  const fs::path out(cfg.output_dir);
  write_farfield_csv((out / "farfield.csv").string(), ff);

  Json metrics;
  metrics["directions"] = grid.size();
  metrics["sup_norm"] = ff.values.size() ? ff.values.cwiseAbs().maxCoeff() : 0.0;
  if (cfg.verify_asymptotics) {
    Vec2 blo, bhi;
    shape.bounding_box(blo, bhi);
    const double diam = (bhi - blo).norm();
    std::vector<double> radii;
    for (int i = 0; i <= 8; ++i) {
      radii.push_back(diam * 1e2 * std::pow(1e2, i / 8.0));
    }
    const AsymptoticsReport rep = verify_asymptotics(
        density, k, Vec3(0.3, 0.1, 0.95), radii);
    write_asymptotics_csv((out / "asymptotics.csv").string(), rep);
    metrics["asymptotics_slope"] = rep.slope;
  }
  write_json((out / "farfield_metrics.json").string(), metrics);
  std::cout << "farfield: " << grid.size() << " directions\n";
  return 0;
}

int cmd_invert(const CliOptions& opt) {
  const ExperimentConfig cfg = load(opt);
  const ScreenShape shape = cfg.shape.build();
  const WaveNumber k = cfg.wave();

  FarField ff{SphereGrid{}, Eigen::VectorXcd(), k};
  if (cfg.farfield_csv) {
    ff = read_farfield_csv(*cfg.farfield_csv, k);
  } else {
    const IncidentWave wave = cfg.incident_wave.build();
    const auto mesh = mesh_shape_shared(shape, cfg.target_h, cfg.grading);
    const Density density = solve(assemble(k, mesh, wave, cfg.basis));
    ff = farfield_of_density(density, k,
                             SphereGrid::hemisphere(cfg.n_theta, cfg.n_phi));
  }

  const DiskSpectrum spec = spectrum_from_farfield(ff, cfg.spectrum_n);
  const ReconstructionWindow window =
      ReconstructionWindow::around(shape, cfg.window_scale, cfg.lattice_n);
  const AmplitudeField field = reconstruct_density(spec, window);
  const SupportEstimate support = estimate_support(field, cfg.tau, 1e-14);

  const fs::path out(cfg.output_dir);
  write_spectrum_csv((out / "spectrum.csv").string(), spec);
  write_support_csv((out / "support.csv").string(), support);

  Json metrics;
  metrics["max_amplitude"] = field.amplitude.maxCoeff();
  metrics["zero_field"] = support.zero_field;
  metrics["degenerate"] = support.zero_field;
  metrics["tau"] = cfg.tau;
  metrics["jaccard"] = jaccard_index(support, shape);
  metrics["rim_sharpness"] = rim_sharpness(field, Vec2(1.0, 0.0));
  write_json((out / "invert_metrics.json").string(), metrics);
  std::cout << "invert: jaccard " << metrics["jaccard"] << "\n";
  return 0;
}

int cmd_uniqueness(const CliOptions& opt) {
  const ExperimentConfig cfg = load(opt);
  if (!cfg.shape_b) {
    throw ValidationError("config field 'shape_b' required for uniqueness");
  }
  const ScreenShape shape_a = cfg.shape.build();
  const ScreenShape shape_b = cfg.shape_b->build();
  UniquenessParams params;
  params.target_h = cfg.target_h;
  params.grading = cfg.grading;
  params.basis = cfg.basis;
  params.n_theta = cfg.n_theta;
  params.n_phi = cfg.n_phi;
  const UniquenessReport rep = uniqueness_experiment(
      shape_a, shape_b, cfg.incident_wave.build(), cfg.wave(), params);

  Json j;
  j["degenerate"] = rep.degenerate;
  j["antisymmetry_defect"] = rep.antisymmetry_defect;
  j["farfield_distance_rel"] = rep.farfield_distance_rel;
  j["noise_floor_rel"] = rep.noise_floor_rel;
  j["distance_over_floor"] =
      rep.noise_floor_rel > 0.0 ? rep.farfield_distance_rel / rep.noise_floor_rel
                                : 0.0;
  j["sup_farfield_a"] = rep.sup_farfield_a;
  j["sup_farfield_b"] = rep.sup_farfield_b;
  j["density_norm_a"] = rep.density_norm_a;
  j["density_norm_b"] = rep.density_norm_b;
  write_json((fs::path(cfg.output_dir) / "uniqueness_report.json").string(), j);
  std::cout << "uniqueness: distance " << rep.farfield_distance_rel
            << ", floor " << rep.noise_floor_rel
            << (rep.degenerate ? " (degenerate incident wave)" : "") << "\n";
  return 0;
}

int cmd_verify(std::uint64_t seed, int threads) {
  set_thread_count(threads);
  const auto results = run_property_suite(seed);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " — "
              << r.detail << "\n";
    all = all && r.pass;
  }
  if (!all) throw NumericalError("property suite failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acoustic scattering from flat sound-soft screens: direct "
               "solver, far fields, band-limited shape recovery"};
  app.require_subcommand(1);

  CliOptions opt;
  std::uint64_t verify_seed = 1;
  int verify_threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config path")->required();
    sub->add_option("--out", opt.out_override, "output directory override");
    sub->add_option("--seed", opt.seed_override, "seed override");
    sub->add_option("--threads", opt.threads, "worker threads (0 = auto)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve for the jump density");
  add_common(solve);
  CLI::App* farfield = app.add_subcommand("farfield", "far-field of a solve");
  add_common(farfield);
  farfield->add_flag("--verify-asymptotics", opt.verify_asymptotics,
                     "emit the (r, error*r) table");
  CLI::App* invert = app.add_subcommand("invert", "support recovery from a far-field");
  add_common(invert);
  CLI::App* uniqueness = app.add_subcommand("uniqueness", "two-shape far-field comparison");
  add_common(uniqueness);
  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--seed", verify_seed, "property-suite seed");
  verify->add_option("--threads", verify_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (farfield->parsed()) return cmd_farfield(opt);
    if (invert->parsed()) return cmd_invert(opt);
    if (uniqueness->parsed()) return cmd_uniqueness(opt);
    if (verify->parsed()) return cmd_verify(verify_seed, verify_threads);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
