#pragma once

// Oriented lines in R^3 and their dual-sphere images.
//
// An oriented line through p with unit direction d maps to the dual vector
// d + eps*(p x d); the dual part is the moment of the line about the origin
// and is independent of the choice of p on the line.  The inverse map drops
// a perpendicular from the origin: foot = d x moment.

#include "dualfrenet/dual_vec3.hpp"
#include "dualfrenet/tolerances.hpp"
#include "dualfrenet/vec3.hpp"

namespace dualfrenet {

struct Line3 {
  Vec3 point;      // any point on the line
  Vec3 direction;  // unit length
};

// Relative placement of two lines, computed entirely in real arithmetic.
// Serves as the ground truth the dual-angle computation is checked against.
struct LinePairGeometry {
  double angle = 0.0;     // in [0, pi]
  double distance = 0.0;  // shortest distance, >= 0
  bool parallel = false;
};

UnitDualVec3 line_to_dual(const Line3& line, const Tolerances& tol = default_tolerances());

Line3 dual_to_line(const DualVec3& v, const Tolerances& tol = default_tolerances());

LinePairGeometry line_pair_geometry(const Line3& a, const Line3& b,
                                    const Tolerances& tol = default_tolerances());

} // namespace dualfrenet
