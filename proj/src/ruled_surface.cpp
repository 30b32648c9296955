#include "dualfrenet/ruled_surface.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "dualfrenet/errors.hpp"
#include "dualfrenet/line_geometry.hpp"

namespace dualfrenet {

namespace {

constexpr double kMembershipTol = 1e-8;
constexpr double kUnitTol = 1e-10;

void validate_patch(const RuledSurfacePatch& patch) {
  const std::size_t n = patch.s_grid.size();
  if (n < 2 || patch.base_points.size() != n || patch.rulings.size() != n) {
    raise(ErrorCode::InvalidPatch, "patch arrays must share a length of at least 2");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(norm(patch.rulings[i]) - 1.0) > kUnitTol) {
      raise(ErrorCode::InvalidPatch, "ruling is not a unit vector");
    }
  }
}

void append_number(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  out += buf;
}

}  // namespace

RuledSurfacePatch dual_curve_to_ruled(const DualCurve& c, const std::vector<double>& s_grid,
                                      double u_min, double u_max) {
  if (s_grid.size() < 2) {
    raise(ErrorCode::InvalidPatch, "need at least 2 samples");
  }
  if (!(u_max > u_min)) {
    raise(ErrorCode::InvalidPatch, "u range is empty");
  }

  RuledSurfacePatch patch;
  patch.s_grid = s_grid;
  patch.u_min = u_min;
  patch.u_max = u_max;

  for (double s : s_grid) {
    const DualVec3 v = c.position(s);
    const double unit_res = std::abs(dot(v.re, v.re) - 1.0);
    const double moment_res = std::abs(dot(v.re, v.du));
    if (unit_res > kMembershipTol || moment_res > kMembershipTol) {
      std::ostringstream os;
      os << "sample at s = " << s << " is off the dual unit sphere (residuals " << unit_res
         << ", " << moment_res << ")";
      raise(ErrorCode::NotOnDualSphere, os.str());
    }
    const Line3 line = dual_to_line(v);
    patch.base_points.push_back(line.point);
    patch.rulings.push_back(line.direction);
  }

  patch.degenerate = true;
  for (std::size_t i = 1; i < patch.s_grid.size() && patch.degenerate; ++i) {
    if (norm(patch.rulings[i] - patch.rulings[0]) > 1e-12 ||
        norm(patch.base_points[i] - patch.base_points[0]) > 1e-12) {
      patch.degenerate = false;
    }
  }
  return patch;
}

DualCurve ruled_to_dual_curve(const RuledSurfacePatch& patch) {
  validate_patch(patch);
  if (patch.s_grid.size() < 4) {
    raise(ErrorCode::InvalidPatch, "need at least 4 samples to rebuild a curve");
  }
  std::vector<Vec3> moments;
  moments.reserve(patch.s_grid.size());
  for (std::size_t i = 0; i < patch.s_grid.size(); ++i) {
    moments.push_back(cross(patch.base_points[i], patch.rulings[i]));
  }
  return make_dual_curve(patch.s_grid.front(), patch.s_grid.back(),
                         sampled_part(patch.s_grid, patch.rulings),
                         sampled_part(patch.s_grid, moments));
}

std::string export_mesh(const RuledSurfacePatch& patch, int n_u) {
  validate_patch(patch);
  if (n_u < 2) {
    raise(ErrorCode::InvalidPatch, "need at least 2 samples across the rulings");
  }
  if (!(patch.u_max > patch.u_min)) {
    raise(ErrorCode::InvalidPatch, "u range is empty");
  }

  const std::size_t ns = patch.s_grid.size();
  std::string out;
  out.reserve(ns * n_u * 40);

  for (std::size_t i = 0; i < ns; ++i) {
    for (int j = 0; j < n_u; ++j) {
      const double u =
          patch.u_min + (patch.u_max - patch.u_min) * j / static_cast<double>(n_u - 1);
      const Vec3 v = patch.base_points[i] + patch.rulings[i] * u;
      out += "v ";
      append_number(out, v.x);
      out += ' ';
      append_number(out, v.y);
      out += ' ';
      append_number(out, v.z);
      out += '\n';
    }
  }

  // Row-major vertex ids: vertex (i, j) is i*n_u + j + 1.
  char buf[160];
  for (std::size_t i = 0; i + 1 < ns; ++i) {
    for (int j = 0; j + 1 < n_u; ++j) {
      const long v00 = static_cast<long>(i) * n_u + j + 1;
      const long v10 = v00 + n_u;
      const long v11 = v10 + 1;
      const long v01 = v00 + 1;
      std::snprintf(buf, sizeof(buf), "f %ld %ld %ld\nf %ld %ld %ld\n", v00, v10, v11, v00,
                    v11, v01);
      out += buf;
    }
  }
  return out;
}

}  // namespace dualfrenet
