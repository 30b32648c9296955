#pragma once

// Dual space curves t -> a(t) + eps*a*(t) and their differential apparatus.
//
// All frame quantities are computed with the non-unit-speed formulas in dual
// arithmetic, so they are invariant under real reparameterization:
//   tangent   a' / ||a'||
//   curvature ||a' x a''|| / ||a'||^3
//   torsion   <a' x a'', a'''> / ||a' x a''||^2
// Derivatives come either from closed forms (catalog curves) or from
// 5-point finite-difference stencils on the evaluator.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dualfrenet/dual_scalar.hpp"
#include "dualfrenet/dual_vec3.hpp"
#include "dualfrenet/tolerances.hpp"
#include "dualfrenet/vec3.hpp"

namespace dualfrenet {

enum class DerivativeMode { analytic, finite_difference };

class DualCurve {
public:
  using Fn = std::function<DualVec3(double)>;

  DualCurve() = default;
  DualCurve(double t0, double t1, Fn eval, Fn d1, Fn d2, Fn d3, DerivativeMode mode);

  // Derivatives realized by finite differences of the evaluator.
  static DualCurve from_eval(double t0, double t1, Fn eval);

  double t_begin() const noexcept { return t0_; }
  double t_end() const noexcept { return t1_; }
  DerivativeMode derivative_mode() const noexcept { return mode_; }

  DualVec3 position(double t) const;
  DualVec3 derivative(int order, double t) const; // order in {1, 2, 3}

private:
  double t0_ = 0.0, t1_ = 1.0;
  Fn eval_;
  std::array<Fn, 3> deriv_;
  DerivativeMode mode_ = DerivativeMode::analytic;
};

// Building blocks for curve expressions: a real-valued component curve with
// its derivatives.  A dual curve is assembled from a real part and a dual
// part; analyticity survives only if both parts have closed-form derivatives.
struct CurvePart {
  std::function<Vec3(double)> eval, d1, d2, d3;
  bool analytic = true;
};

CurvePart helix_part(double radius, double pitch);          // (R cos t, R sin t, H t)
CurvePart circle_part(double radius);                       // (R cos t, R sin t, 0)
CurvePart line_part(const Vec3& point, const Vec3& velocity);
CurvePart polynomial_part(const std::array<std::vector<double>, 3>& coeffs);
CurvePart scaled_part(double factor, CurvePart inner);
CurvePart zero_part();
// Natural cubic spline through the samples; derivatives are left to finite
// differences of the interpolant (non-analytic).
CurvePart sampled_part(std::vector<double> t, std::vector<Vec3> points);

DualCurve make_dual_curve(double t0, double t1, const CurvePart& re, const CurvePart& du);

// Same curve with derivatives forced through the finite-difference path.
DualCurve with_finite_differences(const DualCurve& c);

// Node tables for curves produced by integration or loaded from sample
// bundles: positions plus derivative samples, interpolated by cubic Hermite
// between nodes (each table uses the next one as its slopes; the last falls
// back to 4-node Lagrange).
struct HermiteTables {
  std::vector<double> nodes; // strictly increasing
  std::vector<DualVec3> p, d1, d2, d3;
  std::vector<DualVec3> d4; // optional
};

DualCurve hermite_sampled_curve(std::shared_ptr<const HermiteTables> tables);

struct FrenetData {
  UnitDualVec3 t_vec, n_vec, b_vec;
  DualScalar kappa, tau;
  DualScalar speed; // d s-tilde / dt at the query point
};

FrenetData frenet(const DualCurve& c, double t, const Tolerances& tol = default_tolerances());

// Dual arc length over [a, b]: integral of the dual speed, both slots
// controlled to 1e-10 by adaptive quadrature.
DualScalar dual_arc_length(const DualCurve& c, double a, double b,
                           const Tolerances& tol = default_tolerances());

// A curve re-indexed by the real arc length s of its real part, together
// with the parameter map and the dual arc length s-tilde(s) = s + eps*s*(s).
struct ArcCurve {
  DualCurve curve;                          // domain [0, L]
  std::function<double(double)> t_of_s;     // original parameter at arc length s
  std::function<DualScalar(double)> stilde; // dual arc length from the start
};

ArcCurve reparameterize_by_arclength(const DualCurve& c,
                                     const Tolerances& tol = default_tolerances());

// Wraps a curve that is already unit real speed (validated by sampling).
ArcCurve make_arc_curve(const DualCurve& c, const Tolerances& tol = default_tolerances());

struct StraightLineResult {
  bool is_line = false;
  double max_kappa_re = 0.0, max_kappa_du = 0.0; // curvature magnitude over samples
  double fit_residual_re = 0.0, fit_residual_du = 0.0;
  std::optional<UnitDualVec3> direction; // fitted line, present when is_line
  std::optional<DualVec3> through;
};

StraightLineResult classify_straight_line(const DualCurve& c,
                                          const Tolerances& tol = default_tolerances(),
                                          int n_samples = 64);

struct PlanarResult {
  bool is_planar = false;
  double max_tau_re = 0.0, max_tau_du = 0.0;
  double max_plane_re = 0.0, max_plane_du = 0.0; // offset from the fitted plane
  std::optional<UnitDualVec3> normal; // plane through `through` with this normal
  std::optional<DualVec3> through;
};

PlanarResult classify_planar(const DualCurve& c, const Tolerances& tol = default_tolerances(),
                             int n_samples = 64);

} // namespace dualfrenet
