#include "screenbem/incident.hpp"

#include <cmath>

#include "screenbem/geometry.hpp"

namespace screenbem {

IncidentWave IncidentWave::plane(const Vec3& direction, Complex amplitude) {
  const double n = direction.norm();
  if (n == 0.0) throw ValidationError("plane wave: zero direction");
  IncidentWave w;
  w.components_.push_back(PlaneWave{direction / n, amplitude});
  return w;
}

IncidentWave IncidentWave::point_source(const Vec3& location,
                                        Complex amplitude) {
  IncidentWave w;
  w.components_.push_back(PointSource{location, amplitude});
  return w;
}

IncidentWave IncidentWave::herglotz(HerglotzWave wave) {
  if (wave.directions.size() != wave.weights.size() ||
      wave.directions.size() != wave.values.size() || wave.directions.empty()) {
    throw ValidationError("herglotz wave: mismatched sample arrays");
  }
  for (auto& d : wave.directions) {
    const double n = d.norm();
    if (n == 0.0) throw ValidationError("herglotz wave: zero direction");
    d /= n;
  }
  IncidentWave w;
  w.components_.push_back(std::move(wave));
  return w;
}

IncidentWave IncidentWave::superposition(
    const std::vector<IncidentWave>& parts) {
  IncidentWave w;
  for (const auto& p : parts) {
    w.components_.insert(w.components_.end(), p.components_.begin(),
                         p.components_.end());
  }
  if (w.components_.empty()) {
    throw ValidationError("superposition: no components");
  }
  return w;
}

IncidentWave IncidentWave::axial_sine() {
  const Complex half_over_i = Complex(0.0, -0.5);  // 1/(2i)
  return superposition({plane(Vec3(0, 0, 1), half_over_i),
                        plane(Vec3(0, 0, -1), -half_over_i)});
}

Complex IncidentWave::value(const WaveNumber& k, const Vec3& x) const {
  Complex total(0.0, 0.0);
  for (const auto& comp : components_) {
    if (const auto* p = std::get_if<PlaneWave>(&comp)) {
      total += p->amplitude * std::exp(kI * k.value() * p->direction.dot(x));
    } else if (const auto* s = std::get_if<PointSource>(&comp)) {
      total += s->amplitude * phi(k, x, s->location);
    } else if (const auto* h = std::get_if<HerglotzWave>(&comp)) {
      for (std::size_t j = 0; j < h->directions.size(); ++j) {
        total += h->weights[j] * h->values[j] *
                 std::exp(kI * k.value() * h->directions[j].dot(x));
      }
    }
  }
  return total;
}

void IncidentWave::validate_against_screen(const ScreenShape& shape) const {
  for (const auto& comp : components_) {
    if (const auto* s = std::get_if<PointSource>(&comp)) {
      const Vec2 sp(s->location.x(), s->location.y());
      if (std::abs(s->location.z()) < 1e-12 &&
          (shape.contains(sp) || shape.boundary_distance(sp) < 1e-12)) {
        throw ValidationError("incident wave: point source lies on the screen");
      }
    }
  }
}

}  // namespace screenbem
