#pragma once

// Dual vectors: pairs (a, a*) of real 3-vectors acting like a + eps*a*.
// The scalar and cross products distribute the product rule across the
// slots; the unit-length elements form the dual unit sphere, whose points
// correspond to oriented lines (see line_geometry.hpp).

#include <cmath>
#include <ostream>

#include "dualfrenet/dual_scalar.hpp"
#include "dualfrenet/errors.hpp"
#include "dualfrenet/tolerances.hpp"
#include "dualfrenet/vec3.hpp"

namespace dualfrenet {

struct DualVec3 {
  Vec3 re;
  Vec3 du;
};

inline DualVec3 operator+(const DualVec3& a, const DualVec3& b) {
  return {a.re + b.re, a.du + b.du};
}
inline DualVec3 operator-(const DualVec3& a, const DualVec3& b) {
  return {a.re - b.re, a.du - b.du};
}
inline DualVec3 operator-(const DualVec3& a) { return {-a.re, -a.du}; }

inline DualVec3 operator*(const DualVec3& a, DualScalar s) {
  return {a.re * s.re, a.re * s.du + a.du * s.re};
}
inline DualVec3 operator*(DualScalar s, const DualVec3& a) { return a * s; }
inline DualVec3 operator/(const DualVec3& a, DualScalar s) {
  const DualScalar inv = DualScalar{1.0, 0.0} / s;
  return a * inv;
}

inline DualScalar dot(const DualVec3& a, const DualVec3& b) {
  return {dot(a.re, b.re), dot(a.re, b.du) + dot(a.du, b.re)};
}

inline DualVec3 cross(const DualVec3& a, const DualVec3& b) {
  return {cross(a.re, b.re), cross(a.re, b.du) + cross(a.du, b.re)};
}

inline bool finite(const DualVec3& a) { return finite(a.re) && finite(a.du); }

// ||a + eps a*|| = ||a|| + eps <a, a*>/||a||.  Undefined when the real part
// vanishes: a pure dual vector has no meaningful length.
inline DualScalar norm(const DualVec3& a, const Tolerances& tol = default_tolerances()) {
  const double r = norm(a.re);
  if (r <= tol.tol_zero) raise(ErrorCode::ZeroRealPart, "norm of zero-real-part dual vector");
  return checked({r, dot(a.re, a.du) / r}, "dual norm");
}

// A dual vector constrained to the dual unit sphere: unit real part and
// <re, du> = 0.  Construction validates both, so holders of this type can
// rely on the constraints without rechecking.
class UnitDualVec3 {
public:
  static constexpr double kUnitTol = 1e-10;

  explicit UnitDualVec3(const DualVec3& v, double tol = kUnitTol) : v_(v) {
    if (std::abs(norm(v.re) - 1.0) > tol)
      raise(ErrorCode::NotOnDualSphere, "real part is not unit length");
    if (std::abs(dot(v.re, v.du)) > tol)
      raise(ErrorCode::NotOnDualSphere, "real and dual parts are not orthogonal");
  }

  const DualVec3& vec() const noexcept { return v_; }
  const Vec3& re() const noexcept { return v_.re; }
  const Vec3& du() const noexcept { return v_.du; }
  operator const DualVec3&() const noexcept { return v_; }

private:
  DualVec3 v_;
};

inline UnitDualVec3 normalize(const DualVec3& a, const Tolerances& tol = default_tolerances()) {
  const DualVec3 u = a / norm(a, tol);
  // Normalized vectors satisfy the sphere constraints exactly in exact
  // arithmetic; the loose constructor tolerance absorbs roundoff.
  return UnitDualVec3(u, 1e-9);
}

// Dual angle between two unit dual vectors: theta + eps*theta', where theta
// separates the real directions and theta' is the offset along the common
// perpendicular.  Near-parallel real parts make the angle ill-conditioned
// and raise AngleSingularity.
inline DualScalar dual_angle(const UnitDualVec3& a, const UnitDualVec3& b,
                             const Tolerances& tol = default_tolerances()) {
  return acos(dot(a.vec(), b.vec()), tol);
}

inline std::ostream& operator<<(std::ostream& os, const DualVec3& v) {
  return os << v.re << " + eps" << v.du;
}

} // namespace dualfrenet
