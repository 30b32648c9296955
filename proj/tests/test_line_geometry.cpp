#include <cmath>

#include "doctest.h"

#include "dualfrenet/line_geometry.hpp"
#include "test_support.hpp"

using namespace dualfrenet;

namespace {

Vec3 unit(const Vec3& v) { return v / norm(v); }

}  // namespace

TEST_CASE("a line maps to its direction plus moment") {
  const Line3 line{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  const UnitDualVec3 v = line_to_dual(line);
  CHECK(v.re().x == 0.0);
  CHECK(v.re().y == 0.0);
  CHECK(v.re().z == 1.0);
  CHECK(v.du().x == 0.0);
  CHECK(v.du().y == -1.0);
  CHECK(v.du().z == 0.0);
}

TEST_CASE("the moment does not depend on the anchor point") {
  const Vec3 d{0.0, 0.0, 1.0};
  const UnitDualVec3 a = line_to_dual(Line3{{1.0, 2.0, 3.0}, d});
  const UnitDualVec3 b = line_to_dual(Line3{{1.0, 2.0, -7.5}, d});
  CHECK(a.du().x == doctest::Approx(b.du().x).epsilon(1e-14));
  CHECK(a.du().y == doctest::Approx(b.du().y).epsilon(1e-14));
  CHECK(a.du().z == doctest::Approx(b.du().z).epsilon(1e-14));
}

TEST_CASE("the inverse map drops the perpendicular foot from the origin") {
  const Line3 line{{1.0, 2.0, 3.0}, {0.0, 0.0, 1.0}};
  const UnitDualVec3 v = line_to_dual(line);
  CHECK(v.du().x == 2.0);
  CHECK(v.du().y == -1.0);
  CHECK(v.du().z == 0.0);

  const Line3 back = dual_to_line(v.vec());
  CHECK(back.direction.z == 1.0);
  CHECK(back.point.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(back.point.y == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(back.point.z == doctest::Approx(0.0).epsilon(1e-15));

  // A second trip through the map is stationary: the foot is its own foot.
  const UnitDualVec3 again = line_to_dual(back);
  CHECK(again.re().z == v.re().z);
  CHECK(again.du().x == doctest::Approx(v.du().x).epsilon(1e-15));
  CHECK(again.du().y == doctest::Approx(v.du().y).epsilon(1e-15));
}

TEST_CASE("line_to_dual requires a unit direction") {
  CHECK(geom_code([] { return line_to_dual(Line3{{0, 0, 0}, {0.0, 0.0, 2.0}}); }) ==
        ErrorCode::InvalidLine);
  CHECK(geom_code([] { return line_to_dual(Line3{{0, 0, 0}, {0.0, 0.0, 1.0 + 1e-10}}); }) ==
        ErrorCode::InvalidLine);
  CHECK(geom_code([] { return line_to_dual(Line3{{0, 0, 0}, {0.0, 0.0, 0.0}}); }) ==
        ErrorCode::InvalidLine);
}

TEST_CASE("dual_to_line rejects off-sphere input") {
  CHECK(geom_code([] { return dual_to_line(DualVec3{{0.0, 0.0, 2.0}, {0.0, -1.0, 0.0}}); }) ==
        ErrorCode::NotOnDualSphere);
  CHECK(geom_code([] { return dual_to_line(DualVec3{{0.0, 0.0, 1.0}, {0.0, 0.0, 0.5}}); }) ==
        ErrorCode::NotOnDualSphere);
}

TEST_CASE("pair geometry classifies parallel, intersecting, and skew lines") {
  const Line3 z_axis{{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};

  SUBCASE("parallel") {
    const Line3 offset{{3.0, 4.0, 0.0}, {0.0, 0.0, 1.0}};
    const LinePairGeometry g = line_pair_geometry(z_axis, offset);
    CHECK(g.parallel);
    CHECK(g.angle == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.distance == doctest::Approx(5.0).epsilon(1e-12));
  }

  SUBCASE("intersecting") {
    const Line3 x_axis{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    const Line3 y_axis{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    const LinePairGeometry g = line_pair_geometry(x_axis, y_axis);
    CHECK(!g.parallel);
    CHECK(g.angle == doctest::Approx(1.5707963267948966).epsilon(1e-15));
    CHECK(g.distance == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("skew") {
    const Line3 x_axis{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    const Line3 above{{0.0, 0.0, 2.0}, {0.0, 1.0, 0.0}};
    const LinePairGeometry g = line_pair_geometry(x_axis, above);
    CHECK(!g.parallel);
    CHECK(g.angle == doctest::Approx(1.5707963267948966).epsilon(1e-15));
    CHECK(g.distance == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("dual angle agrees with the real pair oracle on a generic pair") {
  const Line3 a{{0.3, -1.2, 0.5}, unit({1.0, 2.0, 3.0})};
  const Line3 b{{2.0, 0.0, -1.0}, unit({-1.0, 0.5, 2.0})};

  const LinePairGeometry g = line_pair_geometry(a, b);
  const DualScalar theta = dual_angle(line_to_dual(a), line_to_dual(b));

  CHECK(theta.re == doctest::Approx(g.angle).epsilon(1e-12));
  CHECK(std::abs(theta.du) == doctest::Approx(g.distance).epsilon(1e-12));
}
