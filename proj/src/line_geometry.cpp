#include "dualfrenet/line_geometry.hpp"

#include <cmath>

#include "dualfrenet/errors.hpp"

namespace dualfrenet {

UnitDualVec3 line_to_dual(const Line3& line, const Tolerances& tol) {
  if (std::abs(norm(line.direction) - 1.0) > 1e-12)
    raise(ErrorCode::InvalidLine, "line direction must be unit length");
  if (!finite(line.point) || !finite(line.direction))
    raise(ErrorCode::NumericBreakdown, "line_to_dual input");
  return UnitDualVec3({line.direction, cross(line.point, line.direction)});
}

Line3 dual_to_line(const DualVec3& v, const Tolerances& tol) {
  (void)tol;
  // Membership gate is looser than the UnitDualVec3 constructor so that
  // vectors produced by longer pipelines still convert.
  if (std::abs(norm(v.re) - 1.0) > 1e-8 || std::abs(dot(v.re, v.du)) > 1e-8)
    raise(ErrorCode::NotOnDualSphere, "dual_to_line needs a dual unit vector");
  // The foot of the perpendicular from the origin; any point on the line
  // would do, this one is canonical.
  return {cross(v.re, v.du), v.re};
}

LinePairGeometry line_pair_geometry(const Line3& a, const Line3& b, const Tolerances& tol) {
  if (std::abs(norm(a.direction) - 1.0) > 1e-12 || std::abs(norm(b.direction) - 1.0) > 1e-12)
    raise(ErrorCode::InvalidLine, "line_pair_geometry needs unit directions");

  LinePairGeometry out;
  const double c = std::clamp(dot(a.direction, b.direction), -1.0, 1.0);
  out.angle = std::acos(c);

  const Vec3 n = cross(a.direction, b.direction);
  const double n_len = norm(n);
  const Vec3 offset = b.point - a.point;
  if (n_len <= tol.tol_parallel) {
    // Parallel (or anti-parallel): distance of b.point from line a.
    out.parallel = true;
    out.distance = norm(cross(offset, a.direction));
  } else {
    // Skew or intersecting: project the offset onto the common perpendicular.
    out.distance = std::abs(dot(offset, n)) / n_len;
  }
  return out;
}

} // namespace dualfrenet
