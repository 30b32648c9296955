#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"

#include "dualfrenet/ruled_surface.hpp"
#include "test_support.hpp"

using namespace dualfrenet;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Helicoid: horizontal unit directions turning about the z axis while the
// foot point climbs it.  position = direction + eps * (axis_point x direction).
DualCurve helicoid(double climb = 0.5) {
  return DualCurve::from_eval(0.0, 2.0 * kPi, [climb](double s) {
    const Vec3 d{std::cos(s), std::sin(s), 0.0};
    const Vec3 p{0.0, 0.0, climb * s};
    return DualVec3{d, cross(p, d)};
  });
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

int count_lines_with_prefix(const std::string& text, char prefix) {
  int count = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == prefix && pos + 1 < text.size() && text[pos + 1] == ' ') ++count;
    pos = text.find('\n', pos);
    if (pos == std::string::npos) break;
    ++pos;
  }
  return count;
}

}  // namespace

TEST_CASE("sampling a spherical curve recovers foot points and rulings") {
  const RuledSurfacePatch patch =
      dual_curve_to_ruled(helicoid(), uniform_grid(0.0, 2.0 * kPi, 9), -2.0, 2.0);
  REQUIRE(patch.s_grid.size() == 9);
  REQUIRE(patch.base_points.size() == 9);
  REQUIRE(patch.rulings.size() == 9);
  CHECK(!patch.degenerate);
  CHECK(patch.u_min == -2.0);
  CHECK(patch.u_max == 2.0);

  for (std::size_t i = 0; i < patch.s_grid.size(); ++i) {
    const double s = patch.s_grid[i];
    CHECK(norm(patch.rulings[i] - Vec3{std::cos(s), std::sin(s), 0.0}) <= 1e-12);
    CHECK(norm(patch.base_points[i] - Vec3{0.0, 0.0, 0.5 * s}) <= 1e-12);
  }
}

TEST_CASE("sampling rejects curves that leave the dual unit sphere") {
  const DualCurve wrong_length = DualCurve::from_eval(
      0.0, 1.0, [](double) { return DualVec3{{0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}}; });
  CHECK(geom_code([&] {
          return dual_curve_to_ruled(wrong_length, {0.0, 0.5, 1.0});
        }) == ErrorCode::NotOnDualSphere);

  const DualCurve skewed_moment = DualCurve::from_eval(
      0.0, 1.0, [](double) { return DualVec3{{0.0, 0.0, 1.0}, {0.0, 0.0, 0.5}}; });
  CHECK(geom_code([&] {
          return dual_curve_to_ruled(skewed_moment, {0.0, 0.5, 1.0});
        }) == ErrorCode::NotOnDualSphere);
}

TEST_CASE("a two-by-two strip exports to the exact expected mesh") {
  RuledSurfacePatch patch;
  patch.s_grid = {0.0, 1.0};
  patch.base_points = {{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  patch.rulings = {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  patch.u_min = -1.0;
  patch.u_max = 1.0;

  const std::string mesh = export_mesh(patch, 2);
  CHECK(mesh ==
        "v -1 0 0\n"
        "v 1 0 0\n"
        "v -1 0 1\n"
        "v 1 0 1\n"
        "f 1 3 4\n"
        "f 1 4 2\n");
}

TEST_CASE("mesh size follows the grid dimensions") {
  const RuledSurfacePatch patch =
      dual_curve_to_ruled(helicoid(), uniform_grid(0.0, 2.0 * kPi, 100));
  const std::string mesh = export_mesh(patch, 20);
  CHECK(count_lines_with_prefix(mesh, 'v') == 2000);
  CHECK(count_lines_with_prefix(mesh, 'f') == 3762);
  CHECK(mesh.find('\r') == std::string::npos);

  // Identical input gives byte-identical output.
  CHECK(export_mesh(patch, 20) == mesh);
}

TEST_CASE("coordinates are written with twelve significant digits") {
  RuledSurfacePatch patch;
  patch.s_grid = {0.0, 1.0};
  patch.base_points = {{1.0 / 3.0, 0.0, 0.0}, {1.0 / 3.0, 0.0, 1.0}};
  patch.rulings = {{0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}};
  const std::string mesh = export_mesh(patch, 2);
  CHECK(mesh.find("0.333333333333") != std::string::npos);
  CHECK(mesh.find("0.3333333333333") == std::string::npos);
}

TEST_CASE("a patch rebuilds the spherical curve through its samples") {
  const std::vector<double> grid = uniform_grid(0.0, 2.0 * kPi, 100);
  const RuledSurfacePatch patch = dual_curve_to_ruled(helicoid(), grid);
  const DualCurve back = ruled_to_dual_curve(patch);

  for (const std::size_t i : {std::size_t{0}, std::size_t{41}, std::size_t{99}}) {
    const DualVec3 v = back.position(grid[i]);
    CHECK(norm(v.re - patch.rulings[i]) <= 1e-12);
    // Foot point of the rebuilt line: direction x moment.
    CHECK(norm(cross(v.re, v.du) - patch.base_points[i]) <= 1e-10);
  }

  CHECK(geom_code([] {
          RuledSurfacePatch p;
          p.s_grid = {0.0, 1.0, 2.0};
          p.base_points = {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}};
          p.rulings = {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}};
          return ruled_to_dual_curve(p);
        }) == ErrorCode::InvalidPatch);
}

TEST_CASE("export validates the patch before writing anything") {
  RuledSurfacePatch good;
  good.s_grid = {0.0, 1.0};
  good.base_points = {{0, 0, 0}, {0, 0, 1}};
  good.rulings = {{1, 0, 0}, {1, 0, 0}};

  RuledSurfacePatch mismatched = good;
  mismatched.base_points.push_back({0, 0, 2});
  CHECK(geom_code([&] { return export_mesh(mismatched, 2); }) == ErrorCode::InvalidPatch);

  RuledSurfacePatch short_grid = good;
  short_grid.s_grid = {0.0};
  short_grid.base_points = {{0, 0, 0}};
  short_grid.rulings = {{1, 0, 0}};
  CHECK(geom_code([&] { return export_mesh(short_grid, 2); }) == ErrorCode::InvalidPatch);

  RuledSurfacePatch bad_ruling = good;
  bad_ruling.rulings[1] = {2.0, 0.0, 0.0};
  CHECK(geom_code([&] { return export_mesh(bad_ruling, 2); }) == ErrorCode::InvalidPatch);

  RuledSurfacePatch empty_range = good;
  empty_range.u_min = 1.0;
  empty_range.u_max = 1.0;
  CHECK(geom_code([&] { return export_mesh(empty_range, 2); }) == ErrorCode::InvalidPatch);

  CHECK(geom_code([&] { return export_mesh(good, 1); }) == ErrorCode::InvalidPatch);
}

TEST_CASE("a constant line field is flagged degenerate but still exports") {
  const DualCurve constant = DualCurve::from_eval(
      0.0, 1.0, [](double) { return DualVec3{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}; });
  const RuledSurfacePatch patch = dual_curve_to_ruled(constant, uniform_grid(0.0, 1.0, 5));
  CHECK(patch.degenerate);
  const std::string mesh = export_mesh(patch, 3);
  CHECK(count_lines_with_prefix(mesh, 'v') == 15);
  CHECK(count_lines_with_prefix(mesh, 'f') == 16);
}
