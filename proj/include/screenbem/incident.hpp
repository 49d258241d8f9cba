#pragma once

#include <variant>
#include <vector>

#include "screenbem/kernel.hpp"
#include "screenbem/types.hpp"

namespace screenbem {

struct PlaneWave {
  Vec3 direction;  // unit
  Complex amplitude;
};

struct PointSource {
  Vec3 location;
  Complex amplitude;
};

/// Discrete Herglotz wave: sum_j w_j g_j e^{ik d_j . x}.
struct HerglotzWave {
  std::vector<Vec3> directions;
  std::vector<double> weights;
  std::vector<Complex> values;
};

/// Entire Helmholtz solution used as the probing field. Superpositions are
/// flat lists of components.
class IncidentWave {
 public:
  static IncidentWave plane(const Vec3& direction, Complex amplitude = 1.0);
  static IncidentWave point_source(const Vec3& location,
                                   Complex amplitude = 1.0);
  static IncidentWave herglotz(HerglotzWave wave);
  static IncidentWave superposition(const std::vector<IncidentWave>& parts);
  /// sin(k x3) = plane(+e3)/(2i) - plane(-e3)/(2i); antisymmetric in x3,
  /// vanishes identically on the screen plane.
  static IncidentWave axial_sine();

  Complex value(const WaveNumber& k, const Vec3& x) const;

  /// Throws if a point-source component sits on the closed screen.
  void validate_against_screen(const class ScreenShape& shape) const;

  using Component = std::variant<PlaneWave, PointSource, HerglotzWave>;
  const std::vector<Component>& components() const { return components_; }

 private:
  std::vector<Component> components_;
};

}  // namespace screenbem
