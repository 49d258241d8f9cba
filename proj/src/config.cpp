#include "screenbem/config.hpp"

#include <fstream>

namespace screenbem {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ValidationError("config field '" + field + "' " + why);
}

double require_positive(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    bad_field(field, "must be a number");
  }
  const double v = j[field].get<double>();
  if (!(v > 0.0)) bad_field(field, "must be positive");
  return v;
}

Vec3 parse_vec3(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) bad_field(field, "must be [x,y,z]");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Complex parse_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) bad_field(field, "must be [re,im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

ShapeDescriptor parse_shape(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind")) {
    bad_field(field, "must be a shape object with 'kind'");
  }
  ShapeDescriptor s;
  s.kind = j["kind"].get<std::string>();
  if (s.kind == "disk") {
    s.radius = require_positive(j, "radius");
  } else if (s.kind == "ellipse") {
    s.a = require_positive(j, "a");
    s.b = require_positive(j, "b");
  } else if (s.kind == "star") {
    s.base = require_positive(j, "base");
    if (!j.contains("amplitude")) bad_field(field + ".amplitude", "missing");
    s.amplitude = j["amplitude"].get<double>();
    if (!j.contains("lobes")) bad_field(field + ".lobes", "missing");
    s.lobes = j["lobes"].get<int>();
  } else if (s.kind == "custom") {
    for (const char* key : {"ax", "bx", "ay", "by"}) {
      if (!j.contains(key) || !j[key].is_array()) {
        bad_field(field + "." + key, "must be a coefficient array");
      }
    }
    s.custom.ax = j["ax"].get<std::vector<double>>();
    s.custom.bx = j["bx"].get<std::vector<double>>();
    s.custom.ay = j["ay"].get<std::vector<double>>();
    s.custom.by = j["by"].get<std::vector<double>>();
  } else {
    bad_field(field + ".kind", "unknown shape kind '" + s.kind + "'");
  }
  return s;
}

Json shape_json(const ShapeDescriptor& s) {
  Json j;
  j["kind"] = s.kind;
  if (s.kind == "disk") {
    j["radius"] = s.radius;
  } else if (s.kind == "ellipse") {
    j["a"] = s.a;
    j["b"] = s.b;
  } else if (s.kind == "star") {
    j["base"] = s.base;
    j["amplitude"] = s.amplitude;
    j["lobes"] = s.lobes;
  } else {
    j["ax"] = s.custom.ax;
    j["bx"] = s.custom.bx;
    j["ay"] = s.custom.ay;
    j["by"] = s.custom.by;
  }
  return j;
}

IncidentDescriptor parse_incident(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind")) {
    bad_field(field, "must be an incident-wave object with 'kind'");
  }
  IncidentDescriptor w;
  w.kind = j["kind"].get<std::string>();
  if (w.kind == "plane") {
    w.direction = parse_vec3(j.value("direction", Json::array({0, 0, 1})),
                             field + ".direction");
    if (j.contains("amplitude")) {
      w.amplitude = parse_complex(j["amplitude"], field + ".amplitude");
    }
  } else if (w.kind == "point_source") {
    if (!j.contains("location")) bad_field(field + ".location", "missing");
    w.location = parse_vec3(j["location"], field + ".location");
    if (j.contains("amplitude")) {
      w.amplitude = parse_complex(j["amplitude"], field + ".amplitude");
    }
  } else if (w.kind == "herglotz") {
    for (const char* key : {"directions", "weights", "values"}) {
      if (!j.contains(key) || !j[key].is_array()) {
        bad_field(field + "." + key, "must be an array");
      }
    }
    for (const auto& d : j["directions"]) {
      w.herglotz.directions.push_back(parse_vec3(d, field + ".directions"));
    }
    w.herglotz.weights = j["weights"].get<std::vector<double>>();
    for (const auto& v : j["values"]) {
      w.herglotz.values.push_back(parse_complex(v, field + ".values"));
    }
  } else if (w.kind == "superposition") {
    if (!j.contains("components") || !j["components"].is_array()) {
      bad_field(field + ".components", "must be an array");
    }
    for (const auto& c : j["components"]) {
      w.components.push_back(parse_incident(c, field + ".components"));
    }
  } else {
    bad_field(field + ".kind", "unknown incident kind '" + w.kind + "'");
  }
  return w;
}

Json incident_json(const IncidentDescriptor& w) {
  Json j;
  j["kind"] = w.kind;
  if (w.kind == "plane") {
    j["direction"] = Json::array({w.direction.x(), w.direction.y(),
                                  w.direction.z()});
    j["amplitude"] = complex_json(w.amplitude);
  } else if (w.kind == "point_source") {
    j["location"] = Json::array({w.location.x(), w.location.y(),
                                 w.location.z()});
    j["amplitude"] = complex_json(w.amplitude);
  } else if (w.kind == "herglotz") {
    Json dirs = Json::array();
    for (const auto& d : w.herglotz.directions) {
      dirs.push_back(Json::array({d.x(), d.y(), d.z()}));
    }
    j["directions"] = dirs;
    j["weights"] = w.herglotz.weights;
    Json vals = Json::array();
    for (const auto& v : w.herglotz.values) vals.push_back(complex_json(v));
    j["values"] = vals;
  } else {
    Json comps = Json::array();
    for (const auto& c : w.components) comps.push_back(incident_json(c));
    j["components"] = comps;
  }
  return j;
}

}  // namespace

ScreenShape ShapeDescriptor::build() const {
  if (kind == "disk") return ScreenShape::disk(radius);
  if (kind == "ellipse") return ScreenShape::ellipse(a, b);
  if (kind == "star") return ScreenShape::star(base, amplitude, lobes);
  if (kind == "custom") return ScreenShape::custom(custom);
  throw ValidationError("config field 'shape.kind' unknown: " + kind);
}

IncidentWave IncidentDescriptor::build() const {
  if (kind == "plane") return IncidentWave::plane(direction, amplitude);
  if (kind == "point_source") {
    return IncidentWave::point_source(location, amplitude);
  }
  if (kind == "herglotz") return IncidentWave::herglotz(herglotz);
  if (kind == "superposition") {
    std::vector<IncidentWave> parts;
    parts.reserve(components.size());
    for (const auto& c : components) parts.push_back(c.build());
    return IncidentWave::superposition(parts);
  }
  throw ValidationError("config field 'incident_wave.kind' unknown: " + kind);
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  ExperimentConfig cfg;
  if (!j.contains("wavenumber") || !j["wavenumber"].is_number()) {
    bad_field("wavenumber", "must be a number");
  }
  cfg.wavenumber = j["wavenumber"].get<double>();
  if (!(cfg.wavenumber > 0.0)) bad_field("wavenumber", "must be positive");
  if (!j.contains("shape")) bad_field("shape", "missing");
  cfg.shape = parse_shape(j["shape"], "shape");
  if (j.contains("shape_b")) cfg.shape_b = parse_shape(j["shape_b"], "shape_b");
  if (!j.contains("incident_wave")) bad_field("incident_wave", "missing");
  cfg.incident_wave = parse_incident(j["incident_wave"], "incident_wave");

  if (j.contains("mesh")) {
    const Json& m = j["mesh"];
    cfg.target_h = require_positive(m, "target_h");
    cfg.grading = m.value("grading", 0.5);
    if (cfg.grading < 0.0) bad_field("mesh.grading", "must be >= 0");
    const std::string basis = m.value("basis", std::string("P0"));
    if (basis == "P0") {
      cfg.basis = BasisKind::P0;
    } else if (basis == "P0w") {
      cfg.basis = BasisKind::P0w;
    } else {
      bad_field("mesh.basis", "must be P0 or P0w");
    }
  }
  if (j.contains("farfield_grid")) {
    const Json& g = j["farfield_grid"];
    cfg.n_theta = g.value("n_theta", 32);
    cfg.n_phi = g.value("n_phi", 64);
    if (cfg.n_theta < 2) bad_field("farfield_grid.n_theta", "must be >= 2");
    if (cfg.n_phi < 2) bad_field("farfield_grid.n_phi", "must be >= 2");
  }
  if (j.contains("inverse")) {
    const Json& inv = j["inverse"];
    cfg.window_scale = inv.value("window_scale", 1.5);
    if (!(cfg.window_scale > 0.0)) bad_field("inverse.window_scale", "must be positive");
    cfg.lattice_n = inv.value("lattice_n", 256);
    if (cfg.lattice_n < 2) bad_field("inverse.lattice_n", "must be >= 2");
    cfg.tau = inv.value("tau", 0.1);
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) bad_field("inverse.tau", "must lie in (0,1)");
    cfg.spectrum_n = inv.value("spectrum_n", 64);
    if (cfg.spectrum_n < 2) bad_field("inverse.spectrum_n", "must be >= 2");
  }
  if (j.contains("density_csv")) cfg.density_csv = j["density_csv"].get<std::string>();
  if (j.contains("farfield_csv")) cfg.farfield_csv = j["farfield_csv"].get<std::string>();
  cfg.verify_asymptotics = j.value("verify_asymptotics", false);
  cfg.output_dir = j.value("output_dir", std::string("out"));
  cfg.seed = j.value("seed", static_cast<std::uint64_t>(1));
  cfg.threads = j.value("threads", 0);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const std::exception& e) {
    throw ValidationError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

Json serialize_config(const ExperimentConfig& cfg) {
  Json j;
  j["wavenumber"] = cfg.wavenumber;
  j["shape"] = shape_json(cfg.shape);
  if (cfg.shape_b) j["shape_b"] = shape_json(*cfg.shape_b);
  j["incident_wave"] = incident_json(cfg.incident_wave);
  j["mesh"] = Json{{"target_h", cfg.target_h},
                   {"grading", cfg.grading},
                   {"basis", cfg.basis == BasisKind::P0 ? "P0" : "P0w"}};
  j["farfield_grid"] = Json{{"n_theta", cfg.n_theta}, {"n_phi", cfg.n_phi}};
  j["inverse"] = Json{{"window_scale", cfg.window_scale},
                      {"lattice_n", cfg.lattice_n},
                      {"tau", cfg.tau},
                      {"spectrum_n", cfg.spectrum_n}};
  if (cfg.density_csv) j["density_csv"] = *cfg.density_csv;
  if (cfg.farfield_csv) j["farfield_csv"] = *cfg.farfield_csv;
  j["verify_asymptotics"] = cfg.verify_asymptotics;
  j["output_dir"] = cfg.output_dir;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j;
}

}  // namespace screenbem
