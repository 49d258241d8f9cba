#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "screenbem/geometry.hpp"

using namespace screenbem;

TEST_CASE("disk boundary and area") {
  const ScreenShape disk = ScreenShape::disk(1.0);
  CHECK(disk.boundary_point(0.0).isApprox(Vec2(1.0, 0.0), 1e-14));
  CHECK(disk.boundary_point(0.25).isApprox(Vec2(0.0, 1.0), 1e-12));
  CHECK(disk.area() == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("ellipse area matches pi a b") {
  const ScreenShape e = ScreenShape::ellipse(2.0, 1.0);
  CHECK(std::abs(e.area() - 2.0 * kPi) < 1e-6);
}

TEST_CASE("closed curve") {
  const ScreenShape star = ScreenShape::star(1.0, 0.2, 5);
  const Vec2 gap = star.boundary_point(0.0) - star.boundary_point(1.0 - 1e-12);
  CHECK(gap.norm() < 1e-9);
}

TEST_CASE("star with large perturbation self-intersects") {
  CHECK_THROWS_AS(ScreenShape::star(1.0, 0.9, 5), ValidationError);
}

TEST_CASE("star with small perturbation is valid and five-fold symmetric") {
  const ScreenShape star = ScreenShape::star(1.0, 0.2, 5);
  CHECK(star.area() > 0.0);
  const Vec2 p0 = star.boundary_point(0.1);
  const Vec2 p1 = star.boundary_point(0.1 + 0.2);  // rotation by 2 pi / 5
  const double c = std::cos(2.0 * kPi / 5.0), s = std::sin(2.0 * kPi / 5.0);
  const Vec2 rotated(c * p0.x() - s * p0.y(), s * p0.x() + c * p0.y());
  CHECK((p1 - rotated).norm() < 1e-12);
}

TEST_CASE("degenerate and malformed shapes rejected") {
  CHECK_THROWS_AS(ScreenShape::disk(-1.0), ValidationError);
  CHECK_THROWS_AS(ScreenShape::ellipse(1.0, 0.0), ValidationError);
  FourierCurve figure_eight;
  // x = cos t, y = sin 2t: crosses itself at the origin.
  figure_eight.ax = {0.0, 1.0, 0.0};
  figure_eight.bx = {0.0, 0.0, 0.0};
  figure_eight.ay = {0.0, 0.0, 0.0};
  figure_eight.by = {0.0, 0.0, 1.0};
  CHECK_THROWS_AS(ScreenShape::custom(figure_eight), ValidationError);
}

TEST_CASE("make_shape dispatch") {
  CHECK(make_shape("disk", {1.0}).kind() == ShapeKind::Disk);
  CHECK(make_shape("ellipse", {2.0, 1.0}).kind() == ShapeKind::Ellipse);
  CHECK_THROWS_AS(make_shape("disk", {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(make_shape("pentagon", {1.0}), ValidationError);
}

TEST_CASE("uniform disk mesh: count, area sum, conformity") {
  const ScreenShape disk = ScreenShape::disk(1.0);
  const ScreenMesh mesh = mesh_shape(disk, 0.1, 0.0);
  CHECK(mesh.panel_count() >= 400);
  CHECK(mesh.panel_count() <= 1200);
  CHECK(std::abs(mesh.total_area - kPi) <= 1e-3 * kPi);
  for (const auto& tri : mesh.triangles) CHECK(tri.area > 0.0);

  // Conforming: interior edges shared exactly twice.
  std::map<std::pair<int, int>, int> edges;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int u = tri.v[e], v = tri.v[(e + 1) % 3];
      if (u > v) std::swap(u, v);
      ++edges[{u, v}];
    }
  }
  for (const auto& [edge, count] : edges) CHECK(count <= 2);

  // Vertices inside or on the boundary.
  for (const Vec2& v : mesh.vertices) {
    CHECK((disk.contains(v) || disk.boundary_distance(v) < 1e-6));
  }
}

TEST_CASE("graded disk mesh refines toward the rim") {
  const ScreenMesh mesh = mesh_shape(ScreenShape::disk(1.0), 0.1, 0.5);
  double smallest_rim_diameter = 1e30;
  for (const auto& tri : mesh.triangles) {
    bool on_rim = false;
    for (int v : tri.v) {
      if (mesh.vertex_boundary_distance[v] < 1e-9) on_rim = true;
    }
    if (on_rim) smallest_rim_diameter = std::min(smallest_rim_diameter, tri.diameter);
  }
  CHECK(smallest_rim_diameter < 0.05);
}

TEST_CASE("ellipse(1,1) meshes identically to disk(1)") {
  const ScreenMesh a = mesh_shape(ScreenShape::disk(1.0), 0.15, 0.5);
  const ScreenMesh b = mesh_shape(ScreenShape::ellipse(1.0, 1.0), 0.15, 0.5);
  CHECK(std::abs(a.total_area - b.total_area) < 1e-9);
}

TEST_CASE("area sum converges monotonically under refinement") {
  const ScreenShape star = ScreenShape::star(1.0, 0.2, 5);
  double prev_err = 1e30;
  for (double h : {0.4, 0.25, 0.16}) {
    const ScreenMesh mesh = mesh_shape(star, h, 0.0);
    const double err = std::abs(mesh.total_area - star.area()) / star.area();
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("meshing failure reported for oversized target_h") {
  CHECK_THROWS_AS(mesh_shape(ScreenShape::disk(0.1), 5.0, 0.0),
                  NumericalError);
}

TEST_CASE("point-in-shape agrees with winding number on random points") {
  const ScreenShape star = ScreenShape::star(1.0, 0.2, 5);
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 1000; ++i) {
    const Vec2 p(u(rng), u(rng));
    if (star.boundary_distance(p) < 1e-9) continue;
    ++checked;
    CHECK(star.contains(p) == winding_number_inside(star.boundary_polyline(), p));
  }
  CHECK(checked == 1000);
}

TEST_CASE("translated shape shifts its center") {
  const ScreenShape moved = ScreenShape::disk(1.0).translated(Vec2(0.5, 0.3));
  CHECK(moved.center().isApprox(Vec2(0.5, 0.3), 1e-14));
  CHECK(moved.area() == doctest::Approx(kPi).epsilon(1e-12));
}
