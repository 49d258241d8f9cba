#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "screenbem/inverse.hpp"

namespace screenbem {

using Json = nlohmann::ordered_json;

struct ShapeDescriptor {
  std::string kind;  // disk | ellipse | star | custom
  double radius = 1.0;
  double a = 1.0, b = 1.0;
  double base = 1.0, amplitude = 0.0;
  int lobes = 3;
  FourierCurve custom;

  ScreenShape build() const;
};

struct IncidentDescriptor {
  std::string kind;  // plane | point_source | herglotz | superposition
  Vec3 direction{0, 0, 1};
  Complex amplitude{1.0, 0.0};
  Vec3 location{0, 0, 2};
  HerglotzWave herglotz;
  std::vector<IncidentDescriptor> components;

  IncidentWave build() const;
};

/// Declarative experiment description; canonical JSON keys mirror the field
/// names. parse(serialize(parse(x))) == parse(x).
struct ExperimentConfig {
  double wavenumber = 6.0;
  ShapeDescriptor shape;
  std::optional<ShapeDescriptor> shape_b;
  IncidentDescriptor incident_wave;

  double target_h = 0.15;
  double grading = 0.5;
  BasisKind basis = BasisKind::P0;

  int n_theta = 32;
  int n_phi = 64;

  double window_scale = 1.5;
  int lattice_n = 256;
  double tau = 0.1;
  int spectrum_n = 64;

  std::optional<std::string> density_csv;
  std::optional<std::string> farfield_csv;
  bool verify_asymptotics = false;

  std::string output_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;

  WaveNumber wave() const { return WaveNumber(wavenumber); }
};

ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);
Json serialize_config(const ExperimentConfig& config);

}  // namespace screenbem
