#pragma once

// Small numerics toolbox shared by the curve modules: adaptive quadrature on
// dual-valued integrands, finite-difference stencils (including arbitrary
//-node weights for windows clipped at domain ends), Hermite interpolation,
// and a bracketed Newton solver.

#include <cstddef>
#include <functional>
#include <vector>

#include "dualfrenet/dual_scalar.hpp"

namespace dualfrenet {

// Gauss-Kronrod 7/15 with interval bisection until the local error estimate
// fits inside the proportional share of abs_tol.  Both slots of the dual
// integrand are controlled together.
DualScalar integrate(const std::function<DualScalar(double)>& f, double a, double b,
                     double abs_tol);

// Finite-difference weights for the m-th derivative at x0 over the given
// nodes (Fornberg's recurrence).  Works for any node placement, which is how
// one-sided stencils at domain edges are produced.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order);

// 5-point stencil offsets (added to t, spaced h apart) for a derivative at
// t, kept inside [t_lo, t_hi]: centered where possible, shifted into the
// domain otherwise.
std::vector<double> stencil_offsets(double t, double h, double t_lo, double t_hi);

// First derivative of a uniformly sampled table, 4th order (central inside,
// one-sided at the two points nearest each end).
template <typename T>
std::vector<T> table_derivative(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  auto at = [&](std::size_t i) -> const T& { return f[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      d[i] = (at(i - 2) * (1.0 / (12 * h))) + (at(i - 1) * (-8.0 / (12 * h))) +
             (at(i + 1) * (8.0 / (12 * h))) + (at(i + 2) * (-1.0 / (12 * h)));
    } else if (i == 0) {
      d[i] = at(0) * (-25.0 / (12 * h)) + at(1) * (48.0 / (12 * h)) +
             at(2) * (-36.0 / (12 * h)) + at(3) * (16.0 / (12 * h)) + at(4) * (-3.0 / (12 * h));
    } else if (i == 1) {
      d[i] = at(0) * (-3.0 / (12 * h)) + at(1) * (-10.0 / (12 * h)) +
             at(2) * (18.0 / (12 * h)) + at(3) * (-6.0 / (12 * h)) + at(4) * (1.0 / (12 * h));
    } else if (i + 1 == n) {
      d[i] = at(n - 1) * (25.0 / (12 * h)) + at(n - 2) * (-48.0 / (12 * h)) +
             at(n - 3) * (36.0 / (12 * h)) + at(n - 4) * (-16.0 / (12 * h)) +
             at(n - 5) * (3.0 / (12 * h));
    } else { // i + 2 == n
      d[i] = at(n - 1) * (3.0 / (12 * h)) + at(n - 2) * (10.0 / (12 * h)) +
             at(n - 3) * (-18.0 / (12 * h)) + at(n - 4) * (6.0 / (12 * h)) +
             at(n - 5) * (-1.0 / (12 * h));
    }
  }
  return d;
}

// Cubic Hermite on the bracket [x0, x1]; exact for cubics, O(h^4) otherwise.
template <typename T>
T hermite(double x, double x0, double x1, const T& y0, const T& y1, const T& m0, const T& m1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y0 * (2 * t3 - 3 * t2 + 1) + m0 * ((t3 - 2 * t2 + t) * h) + y1 * (-2 * t3 + 3 * t2) +
         m1 * ((t3 - t2) * h);
}

// Cubic Lagrange interpolation through the 4 table nodes nearest x
// (uniform grid x_i = x_first + i*h).
template <typename T>
T interp_table_cubic(const std::vector<T>& f, double x_first, double h, double x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(f.size());
  std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>((x - x_first) / h) - 1;
  if (i0 < 0) i0 = 0;
  if (i0 > n - 4) i0 = n - 4;
  T acc = f[i0] * 0.0;
  for (std::ptrdiff_t j = 0; j < 4; ++j) {
    double w = 1.0;
    const double xj = x_first + (i0 + j) * h;
    for (std::ptrdiff_t k = 0; k < 4; ++k) {
      if (k == j) continue;
      const double xk = x_first + (i0 + k) * h;
      w *= (x - xk) / (xj - xk);
    }
    acc = acc + f[i0 + j] * w;
  }
  return acc;
}

// Newton iteration safeguarded by a maintained bracket [lo, hi] with
// f(lo) <= 0 <= f(hi) (or the reverse); bisects whenever Newton leaves the
// bracket or stalls.
double guarded_newton(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi, double x0,
                      double x_tol);

// Adds 2*pi multiples so consecutive entries differ by less than pi.
void unwrap_angles(std::vector<double>& angles);

// Runs fn(i) for i in [0, n), chunked across threads when enabled.  Results
// must be written to preallocated slots so ordering is unaffected.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, bool parallel);

} // namespace dualfrenet
