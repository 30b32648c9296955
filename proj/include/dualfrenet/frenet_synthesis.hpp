#pragma once

// Curve synthesis from prescribed dual curvature and torsion.
//
// The frame equations
//   dt/ds = kappa*n,  dn/ds = -kappa*t + tau*b,  db/ds = -tau*n
// together with da/ds = t are integrated forward in dual arithmetic over the
// real arc length s.  The gauge is s-tilde = s: the tangent stays dual-unit,
// so the dual slot of the arc length vanishes identically and the prescribed
// profiles are reproduced as functions of s itself.

#include <functional>
#include <memory>
#include <vector>

#include "dualfrenet/dual_curve.hpp"
#include "dualfrenet/dual_scalar.hpp"
#include "dualfrenet/dual_vec3.hpp"
#include "dualfrenet/tolerances.hpp"

namespace dualfrenet {

// Dual-valued scalar profile of the real arc length, with first and second
// derivative channels.  Missing derivative channels are filled by finite
// differences of the channel above (fill_derivatives).
struct ScalarProfile {
  std::function<DualScalar(double)> f, df, d2f;
};

ScalarProfile const_profile(DualScalar value);
ScalarProfile tan_profile();
ScalarProfile poly_profile(std::vector<double> re_coeffs, std::vector<double> du_coeffs);
ScalarProfile fill_derivatives(ScalarProfile p);

struct FrenetProfile {
  ScalarProfile kappa, tau; // kappa.f(s).re must stay positive on [s0, s1]
  double s0 = 0.0, s1 = 1.0;
  DualVec3 initial_point{};
  // Right-handed dual-orthonormal frame; validated at integration time.
  DualVec3 frame_t{{1, 0, 0}, {}}, frame_n{{0, 1, 0}, {}}, frame_b{{0, 0, 1}, {}};
};

// Node data produced by the integration: positions, the frame, and enough
// derivative tables for third-order Frenet queries between nodes.
class SynthesizedCurve {
public:
  SynthesizedCurve(std::shared_ptr<const HermiteTables> tables, std::vector<DualVec3> frame_t,
                   std::vector<DualVec3> frame_n, std::vector<DualVec3> frame_b,
                   std::vector<DualScalar> kappa, std::vector<DualScalar> tau, double step);

  DualCurve curve() const;     // dense cubic-Hermite interpolant, parameter = s
  ArcCurve arc_curve() const;  // same curve with the exact s-tilde(s) = s map

  const HermiteTables& tables() const noexcept { return *tables_; }
  std::shared_ptr<const HermiteTables> tables_ptr() const noexcept { return tables_; }
  const std::vector<DualVec3>& frame_t() const noexcept { return frame_t_; }
  const std::vector<DualVec3>& frame_n() const noexcept { return frame_n_; }
  const std::vector<DualVec3>& frame_b() const noexcept { return frame_b_; }
  const std::vector<DualScalar>& kappa() const noexcept { return kappa_; }
  const std::vector<DualScalar>& tau() const noexcept { return tau_; }
  double step() const noexcept { return step_; }

private:
  std::shared_ptr<const HermiteTables> tables_;
  std::vector<DualVec3> frame_t_, frame_n_, frame_b_;
  std::vector<DualScalar> kappa_, tau_;
  double step_;
};

SynthesizedCurve synthesize_frenet(const FrenetProfile& p, double step,
                                   const Tolerances& tol = default_tolerances());

inline DualCurve integrate_frenet(const FrenetProfile& p, double step,
                                  const Tolerances& tol = default_tolerances()) {
  return synthesize_frenet(p, step, tol).curve();
}

} // namespace dualfrenet
