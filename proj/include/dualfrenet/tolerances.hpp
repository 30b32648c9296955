#pragma once

namespace dualfrenet {

// Numeric policy knobs shared across the library.  Defaults are the pinned
// values the test suite runs against; `scaled` multiplies every bound
// uniformly (the CLI wires DUALFRENET_TOL_SCALE through here).
struct Tolerances {
  double tol_zero = 1e-12;     // magnitudes treated as zero real parts
  double tol_parallel = 1e-9;  // |cos| proximity to 1 that blocks acos
  double tol_kappa = 1e-10;    // curvature real part below which the frame is undefined
  double tol_classify = 1e-8;  // straight-line / planar classification bound
  double tol_pair = 1e-6;      // Mannheim normal/binormal parallelism bound
  double tol_thm = 1e-6;       // identity-check residual bound
  double tol_ode = 1e-6;       // partner-curve ODE residual bound

  Tolerances scaled(double factor) const {
    Tolerances t = *this;
    t.tol_zero *= factor;
    t.tol_parallel *= factor;
    t.tol_kappa *= factor;
    t.tol_classify *= factor;
    t.tol_pair *= factor;
    t.tol_thm *= factor;
    t.tol_ode *= factor;
    return t;
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

} // namespace dualfrenet
