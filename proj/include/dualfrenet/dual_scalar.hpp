#pragma once

// Dual-number scalar arithmetic.
//
// A dual scalar is a + eps*b where eps^2 = 0.  The real slot carries the
// value, the dual slot carries a first-order displacement: every smooth
// function lifts as f(a + eps*b) = f(a) + eps*b*f'(a), so the dual part of a
// computation is automatically the directional derivative of its real part.
// Elements with a = 0 are zero divisors; operations that would divide by one
// throw instead of producing garbage.

#include <cmath>
#include <ostream>
#include <utility>

#include "dualfrenet/errors.hpp"
#include "dualfrenet/tolerances.hpp"

namespace dualfrenet {

struct DualScalar {
  double re = 0.0;
  double du = 0.0;

  constexpr DualScalar() = default;
  constexpr DualScalar(double r, double d = 0.0) : re(r), du(d) {}
};

constexpr DualScalar operator+(DualScalar x, DualScalar y) { return {x.re + y.re, x.du + y.du}; }
constexpr DualScalar operator-(DualScalar x, DualScalar y) { return {x.re - y.re, x.du - y.du}; }
constexpr DualScalar operator-(DualScalar x) { return {-x.re, -x.du}; }

// Product rule: (a + eps b)(c + eps d) = ac + eps(ad + bc).
constexpr DualScalar operator*(DualScalar x, DualScalar y) {
  return {x.re * y.re, x.re * y.du + x.du * y.re};
}

inline bool finite(DualScalar x) { return std::isfinite(x.re) && std::isfinite(x.du); }

inline DualScalar checked(DualScalar x, const char* where) {
  if (!finite(x)) raise(ErrorCode::NumericBreakdown, where);
  return x;
}

// Inverse of the product rule.  Pure dual divisors (zero real part) have no
// inverse at all, so y.re == 0 is an error rather than a limit case.
inline DualScalar operator/(DualScalar x, DualScalar y) {
  if (y.re == 0.0) raise(ErrorCode::PureDualDivisor, "dual division by zero real part");
  return checked({x.re / y.re, (x.du * y.re - x.re * y.du) / (y.re * y.re)},
                 "dual division");
}

constexpr DualScalar& operator+=(DualScalar& x, DualScalar y) { x = x + y; return x; }
constexpr DualScalar& operator-=(DualScalar& x, DualScalar y) { x = x - y; return x; }
constexpr DualScalar& operator*=(DualScalar& x, DualScalar y) { x = x * y; return x; }
inline DualScalar& operator/=(DualScalar& x, DualScalar y) { x = x / y; return x; }

inline DualScalar sqrt(DualScalar x) {
  if (x.re <= 0.0) raise(ErrorCode::NonPositiveRealPart, "dual sqrt needs re > 0");
  const double r = std::sqrt(x.re);
  return checked({r, x.du / (2.0 * r)}, "dual sqrt");
}

inline DualScalar sin(DualScalar x) { return {std::sin(x.re), x.du * std::cos(x.re)}; }
inline DualScalar cos(DualScalar x) { return {std::cos(x.re), -x.du * std::sin(x.re)}; }
inline DualScalar tan(DualScalar x) {
  const double c = std::cos(x.re);
  return checked({std::tan(x.re), x.du / (c * c)}, "dual tan");
}

inline std::pair<DualScalar, DualScalar> sin_cos(DualScalar x) { return {sin(x), cos(x)}; }

// Arc cosine degenerates where the real part reaches +-1: the dual part blows
// up there, which geometrically is the parallel-lines singularity.
inline DualScalar acos(DualScalar x, const Tolerances& tol = default_tolerances()) {
  if (std::abs(x.re) >= 1.0 - tol.tol_parallel)
    raise(ErrorCode::AngleSingularity, "acos argument too close to +-1");
  return checked({std::acos(x.re), -x.du / std::sqrt(1.0 - x.re * x.re)}, "dual acos");
}

// Componentwise closeness.  Dual scalars are not ordered (eps is a zero
// divisor), so comparisons in client code go through this instead of <.
inline bool approx_eq(DualScalar x, DualScalar y, double tol_re, double tol_du) {
  return std::abs(x.re - y.re) <= tol_re && std::abs(x.du - y.du) <= tol_du;
}
inline bool approx_eq(DualScalar x, DualScalar y, double tol) {
  return approx_eq(x, y, tol, tol);
}

inline std::ostream& operator<<(std::ostream& os, DualScalar x) {
  return os << x.re << (x.du < 0 ? " - " : " + ") << std::abs(x.du) << "eps";
}

} // namespace dualfrenet
