#pragma once

#include <memory>
#include <string>
#include <vector>

#include "screenbem/types.hpp"

namespace screenbem {

enum class ShapeKind { Disk, Ellipse, Star, Custom };

/// Closed curve t in [0,1) given by truncated Fourier series per coordinate:
/// x(t) = ax[0] + sum_m ax[m] cos(2 pi m t) + bx[m] sin(2 pi m t), same for y.
struct FourierCurve {
  std::vector<double> ax, bx, ay, by;

  Vec2 point(double t) const;
  Vec2 derivative(double t) const;
  Vec2 second_derivative(double t) const;
  int modes() const { return static_cast<int>(ax.size()) - 1; }
};

/// Smooth simply connected planar domain bounded by a Fourier curve.
/// Construction validates: closed (by construction), simple (fine polyline
/// segment test), counterclockwise, area above the degeneracy floor.
class ScreenShape {
 public:
  static ScreenShape disk(double radius);
  static ScreenShape ellipse(double a, double b);
  /// Five-lobed star for lobes=5: z(t) = base (e^{2 pi i t} + amp e^{-2 pi i (lobes-1) t}).
  /// Simple iff amp (lobes-1) < 1; the polyline test rejects the rest.
  static ScreenShape star(double base, double amplitude, int lobes);
  static ScreenShape custom(FourierCurve curve);

  ShapeKind kind() const { return kind_; }
  const FourierCurve& curve() const { return curve_; }
  double area() const { return area_; }
  Vec2 center() const { return Vec2(curve_.ax[0], curve_.ay[0]); }
  Vec2 boundary_point(double t) const { return curve_.point(t); }
  const std::vector<Vec2>& boundary_polyline() const { return polyline_; }

  /// Even-odd crossing test on the cached fine polyline.
  bool contains(const Vec2& p) const;
  /// Distance from p to the boundary polyline.
  double boundary_distance(const Vec2& p) const;
  /// Axis-aligned bounding box of the boundary.
  void bounding_box(Vec2& lo, Vec2& hi) const;

  /// Translated copy (constant Fourier term shifted).
  ScreenShape translated(const Vec2& t) const;

 private:
  ScreenShape(ShapeKind kind, FourierCurve curve);
  void validate();

  ShapeKind kind_;
  FourierCurve curve_;
  double area_ = 0.0;
  std::vector<Vec2> polyline_;  // fine, closed (last != first)
};

ScreenShape make_shape(const std::string& kind,
                       const std::vector<double>& params);

struct MeshTriangle {
  std::array<int, 3> v;
  double area;
  Vec2 centroid;
  double diameter;           // longest edge
  double boundary_distance;  // centroid distance to the shape boundary
};

/// Conforming graded triangulation of a ScreenShape. Built as concentric
/// offset rings of the (star-shaped) boundary zipped together; ring spacing
/// follows target_h * d^grading clamped to [target_h^2, target_h].
struct ScreenMesh {
  ScreenShape shape;
  std::vector<Vec2> vertices;
  std::vector<MeshTriangle> triangles;
  std::vector<double> vertex_boundary_distance;
  double target_h = 0.0;
  double grading = 0.0;
  double total_area = 0.0;
  double min_diameter = 0.0;  // epsilon_d clamp for the edge-weighted basis

  int panel_count() const { return static_cast<int>(triangles.size()); }
  std::array<Vec2, 3> triangle_vertices(int t) const {
    const auto& tri = triangles[t];
    return {vertices[tri.v[0]], vertices[tri.v[1]], vertices[tri.v[2]]};
  }
};

ScreenMesh mesh_shape(const ScreenShape& shape, double target_h,
                      double grading);

std::shared_ptr<const ScreenMesh> mesh_shape_shared(const ScreenShape& shape,
                                                    double target_h,
                                                    double grading);

/// Winding-number point-in-polygon (independent of ScreenShape::contains,
/// used by the property suite).
bool winding_number_inside(const std::vector<Vec2>& polyline, const Vec2& p);

}  // namespace screenbem
