#pragma once

// A curve on the dual unit sphere sweeps a family of oriented lines; sampling
// it yields a ruled surface r(s, u) = base(s) + u * ruling(s). This header
// moves between the two pictures and exports sampled patches as meshes.

#include <string>
#include <vector>

#include "dualfrenet/dual_curve.hpp"
#include "dualfrenet/vec3.hpp"

namespace dualfrenet {

struct RuledSurfacePatch {
  std::vector<double> s_grid;
  std::vector<Vec3> base_points;
  std::vector<Vec3> rulings;  // unit directions
  double u_min = -1.0;
  double u_max = 1.0;
  // Set when every sampled line coincides; such a patch still exports as a
  // (zero-area) mesh rather than erroring.
  bool degenerate = false;
};

// Samples c on s_grid, requires each sample to sit on the dual unit sphere
// (membership residual within 1e-8), and converts each to a line. Base
// points are the foot points, rulings the real directions.
RuledSurfacePatch dual_curve_to_ruled(const DualCurve& c, const std::vector<double>& s_grid,
                                      double u_min = -1.0, double u_max = 1.0);

// Rebuilds the dual spherical curve (ruling, base x ruling) through the
// patch samples. Needs at least 4 samples to carry a smooth interpolant.
DualCurve ruled_to_dual_curve(const RuledSurfacePatch& patch);

// Wavefront-style text mesh: "v x y z" vertices row-major over
// (s_grid x n_u uniform u values), "f a b c" triangles with 1-based indices,
// 12 significant digits, LF endings. Deterministic for identical input.
std::string export_mesh(const RuledSurfacePatch& patch, int n_u);

}  // namespace dualfrenet
