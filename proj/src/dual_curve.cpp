#include "dualfrenet/dual_curve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dualfrenet/errors.hpp"
#include "dualfrenet/numerics.hpp"

namespace dualfrenet {
namespace {

// Finite-difference step per derivative order, scaled by max(1, |t|).  A
// k-th derivative divides by h^k, so subtraction noise forces the higher
// orders onto larger steps; one shared step cannot serve all three.
constexpr double kFdStep[3] = {1e-4, 5e-4, 2.5e-3};

DualVec3 fd_derivative(const std::function<DualVec3(double)>& eval, int order, double t,
                       double t_lo, double t_hi) {
  // Fixed steps, chosen for parameters of order unity (arc length, angle);
  // scaling by |t| would trade truncation error for protection this library's
  // bounded domains never need.
  double h = kFdStep[order - 1];
  if (4 * h > t_hi - t_lo) h = (t_hi - t_lo) / 4;
  const std::vector<double> off = stencil_offsets(t, h, t_lo, t_hi);
  const std::vector<double> w = fd_weights(0.0, off, order);
  DualVec3 acc{};
  for (std::size_t i = 0; i < off.size(); ++i) acc = acc + eval(t + off[i]) * DualScalar{w[i]};
  return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

// Natural cubic spline through (x_i, y_i); second derivatives from the
// standard tridiagonal system, zero at both ends.
struct Spline {
  std::vector<double> x;
  std::vector<Vec3> y, m2;

  Vec3 eval(double t) const {
    const std::size_t n = x.size();
    double tc = std::clamp(t, x.front(), x.back());
    auto it = std::upper_bound(x.begin(), x.end(), tc);
    std::size_t i = static_cast<std::size_t>(std::distance(x.begin(), it));
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - tc) / h;
    const double b = (tc - x[i]) / h;
    return y[i] * a + y[i + 1] * b +
           (m2[i] * (a * a * a - a) + m2[i + 1] * (b * b * b - b)) * (h * h / 6.0);
  }
};

Spline build_spline(std::vector<double> x, std::vector<Vec3> y) {
  const std::size_t n = x.size();
  if (n < 4 || y.size() != n) raise(ErrorCode::InvalidInput, "sampled curve needs >= 4 points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) raise(ErrorCode::InvalidInput, "sample parameters must increase");

  std::vector<Vec3> m2(n, Vec3{});
  std::vector<double> diag(n, 0.0), upper(n, 0.0);
  std::vector<Vec3> rhs(n, Vec3{});
  // Thomas algorithm on the interior unknowns; ends stay zero (natural).
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x[i] - x[i - 1];
    const double hr = x[i + 1] - x[i];
    if (i > 1) {
      const double l = hl / 6.0 / diag[i - 1];
      diag[i] = (x[i + 1] - x[i - 1]) / 3.0 - l * upper[i - 1];
      rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl - rhs[i - 1] * l;
    } else {
      diag[i] = (x[i + 1] - x[i - 1]) / 3.0;
      rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
    }
    upper[i] = hr / 6.0;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    Vec3 corr = (i + 1 < n - 1) ? m2[i + 1] * upper[i] : Vec3{};
    m2[i] = (rhs[i] - corr) / diag[i];
  }
  return Spline{std::move(x), std::move(y), std::move(m2)};
}

} // namespace

DualCurve::DualCurve(double t0, double t1, Fn eval, Fn d1, Fn d2, Fn d3, DerivativeMode mode)
    : t0_(t0), t1_(t1), eval_(std::move(eval)),
      deriv_{std::move(d1), std::move(d2), std::move(d3)}, mode_(mode) {
  if (!(t1_ > t0_)) raise(ErrorCode::InvalidInput, "curve domain must be nonempty");
}

DualCurve DualCurve::from_eval(double t0, double t1, Fn eval) {
  auto ev = std::make_shared<Fn>(std::move(eval));
  auto mk = [ev, t0, t1](int order) -> Fn {
    return [ev, t0, t1, order](double t) { return fd_derivative(*ev, order, t, t0, t1); };
  };
  return DualCurve(
      t0, t1, [ev](double t) { return (*ev)(t); }, mk(1), mk(2), mk(3),
      DerivativeMode::finite_difference);
}

DualVec3 DualCurve::position(double t) const {
  DualVec3 p = eval_(t);
  if (!finite(p)) raise(ErrorCode::NumericBreakdown, "curve evaluation");
  return p;
}

DualVec3 DualCurve::derivative(int order, double t) const {
  if (order < 1 || order > 3) raise(ErrorCode::InvalidInput, "derivative order must be 1..3");
  DualVec3 d = deriv_[static_cast<std::size_t>(order - 1)](t);
  if (!finite(d)) raise(ErrorCode::NumericBreakdown, "curve derivative");
  return d;
}

CurvePart helix_part(double radius, double pitch) {
  CurvePart p;
  p.eval = [=](double t) { return Vec3{radius * std::cos(t), radius * std::sin(t), pitch * t}; };
  p.d1 = [=](double t) { return Vec3{-radius * std::sin(t), radius * std::cos(t), pitch}; };
  p.d2 = [=](double t) { return Vec3{-radius * std::cos(t), -radius * std::sin(t), 0.0}; };
  p.d3 = [=](double t) { return Vec3{radius * std::sin(t), -radius * std::cos(t), 0.0}; };
  return p;
}

CurvePart circle_part(double radius) { return helix_part(radius, 0.0); }

CurvePart line_part(const Vec3& point, const Vec3& velocity) {
  CurvePart p;
  p.eval = [=](double t) { return point + velocity * t; };
  p.d1 = [=](double) { return velocity; };
  p.d2 = [](double) { return Vec3{}; };
  p.d3 = [](double) { return Vec3{}; };
  return p;
}

CurvePart polynomial_part(const std::array<std::vector<double>, 3>& coeffs) {
  struct Tables {
    std::array<std::vector<double>, 3> c0, c1, c2, c3;
  };
  auto tb = std::make_shared<Tables>();
  for (int k = 0; k < 3; ++k) {
    tb->c0[k] = coeffs[k].empty() ? std::vector<double>{0.0} : coeffs[k];
    tb->c1[k] = poly_derivative(tb->c0[k]);
    tb->c2[k] = poly_derivative(tb->c1[k]);
    tb->c3[k] = poly_derivative(tb->c2[k]);
  }
  auto mk = [tb](const std::array<std::vector<double>, 3> Tables::*member) {
    return [tb, member](double t) {
      const auto& c = tb.get()->*member;
      return Vec3{horner(c[0], t), horner(c[1], t), horner(c[2], t)};
    };
  };
  CurvePart p;
  p.eval = mk(&Tables::c0);
  p.d1 = mk(&Tables::c1);
  p.d2 = mk(&Tables::c2);
  p.d3 = mk(&Tables::c3);
  return p;
}

CurvePart scaled_part(double factor, CurvePart inner) {
  CurvePart p;
  p.analytic = inner.analytic;
  auto wrap = [factor](std::function<Vec3(double)> f) -> std::function<Vec3(double)> {
    if (!f) return {};
    return [factor, f = std::move(f)](double t) { return f(t) * factor; };
  };
  p.eval = wrap(inner.eval);
  p.d1 = wrap(inner.d1);
  p.d2 = wrap(inner.d2);
  p.d3 = wrap(inner.d3);
  return p;
}

CurvePart zero_part() {
  CurvePart p;
  p.eval = [](double) { return Vec3{}; };
  p.d1 = p.eval;
  p.d2 = p.eval;
  p.d3 = p.eval;
  return p;
}

CurvePart sampled_part(std::vector<double> t, std::vector<Vec3> points) {
  auto spline = std::make_shared<Spline>(build_spline(std::move(t), std::move(points)));
  CurvePart p;
  p.analytic = false;
  p.eval = [spline](double u) { return spline->eval(u); };
  return p;
}

DualCurve make_dual_curve(double t0, double t1, const CurvePart& re, const CurvePart& du) {
  auto ev = [re_eval = re.eval, du_eval = du.eval](double t) {
    return DualVec3{re_eval(t), du_eval(t)};
  };
  if (re.analytic && du.analytic) {
    auto pair_fn = [](std::function<Vec3(double)> a, std::function<Vec3(double)> b) {
      return [a = std::move(a), b = std::move(b)](double t) { return DualVec3{a(t), b(t)}; };
    };
    return DualCurve(t0, t1, ev, pair_fn(re.d1, du.d1), pair_fn(re.d2, du.d2),
                     pair_fn(re.d3, du.d3), DerivativeMode::analytic);
  }
  return DualCurve::from_eval(t0, t1, ev);
}

DualCurve with_finite_differences(const DualCurve& c) {
  return DualCurve::from_eval(c.t_begin(), c.t_end(), [c](double t) { return c.position(t); });
}

DualCurve hermite_sampled_curve(std::shared_ptr<const HermiteTables> tables) {
  const auto& tb = *tables;
  const std::size_t n = tb.nodes.size();
  if (n < 4 || tb.p.size() != n || tb.d1.size() != n || tb.d2.size() != n || tb.d3.size() != n ||
      (!tb.d4.empty() && tb.d4.size() != n))
    raise(ErrorCode::InvalidInput, "hermite tables need >= 4 consistent rows");

  auto locate = [tables](double t) -> std::size_t {
    const auto& nodes = tables->nodes;
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(nodes.begin(), it));
    return std::clamp<std::size_t>(i, 1, nodes.size() - 1) - 1;
  };
  auto piece = [tables, locate](const std::vector<DualVec3>& val, const std::vector<DualVec3>& slope,
                                double t) {
    const auto& nodes = tables->nodes;
    const std::size_t i = locate(t);
    return hermite(t, nodes[i], nodes[i + 1], val[i], val[i + 1], slope[i], slope[i + 1]);
  };

  auto ev = [tables, piece](double t) { return piece(tables->p, tables->d1, t); };
  auto d1 = [tables, piece](double t) { return piece(tables->d1, tables->d2, t); };
  auto d2 = [tables, piece](double t) { return piece(tables->d2, tables->d3, t); };
  auto d3 = [tables, piece, locate](double t) -> DualVec3 {
    if (!tables->d4.empty()) return piece(tables->d3, tables->d4, t);
    // No next-order table: cubic Lagrange through the 4 nearest nodes.
    const auto& nodes = tables->nodes;
    std::size_t i = locate(t);
    std::size_t j = (i == 0) ? 0 : std::min(i - 1, nodes.size() - 4);
    const std::vector<double> window(nodes.begin() + j, nodes.begin() + j + 4);
    const std::vector<double> w = fd_weights(t, window, 0);
    DualVec3 acc{};
    for (int k = 0; k < 4; ++k) acc = acc + tables->d3[j + k] * DualScalar{w[k]};
    return acc;
  };
  return DualCurve(tb.nodes.front(), tb.nodes.back(), ev, d1, d2, d3, DerivativeMode::analytic);
}

FrenetData frenet(const DualCurve& c, double t, const Tolerances& tol) {
  const DualVec3 d1 = c.derivative(1, t);
  const DualVec3 d2 = c.derivative(2, t);
  const DualVec3 d3 = c.derivative(3, t);
  if (norm(d1.re) <= tol.tol_zero) raise(ErrorCode::IrregularCurve, "zero speed at frame query");
  const DualScalar speed = norm(d1, tol);
  const DualVec3 cr = cross(d1, d2);
  const double v = speed.re;
  if (norm(cr.re) / (v * v * v) <= tol.tol_kappa)
    raise(ErrorCode::VanishingCurvature, "frame undefined where curvature vanishes");

  const DualScalar kappa = norm(cr, tol) / (speed * speed * speed);
  const DualScalar tau = dot(cr, d3) / dot(cr, cr);
  UnitDualVec3 t_vec = normalize(d1, tol);
  UnitDualVec3 n_vec = normalize(cross(cr, d1), tol);
  UnitDualVec3 b_vec(cross(t_vec.vec(), n_vec.vec()), 1e-9);
  return FrenetData{std::move(t_vec), std::move(n_vec), std::move(b_vec), kappa, tau, speed};
}

DualScalar dual_arc_length(const DualCurve& c, double a, double b, const Tolerances& tol) {
  if (a == b) return {0.0, 0.0};
  auto f = [&c, &tol](double t) {
    const DualVec3 d1 = c.derivative(1, t);
    if (norm(d1.re) <= tol.tol_zero)
      raise(ErrorCode::IrregularCurve, "zero speed inside arc-length range");
    return norm(d1, tol);
  };
  return integrate(f, a, b, 1e-10);
}

namespace {

struct ArcTable {
  std::vector<double> t;      // original parameter nodes
  std::vector<double> s;      // cumulative real arc length
  std::vector<double> s_du;   // cumulative dual slot
};

ArcTable build_arc_table(const DualCurve& c, const Tolerances& tol, int m) {
  ArcTable tab;
  tab.t.resize(m + 1);
  tab.s.resize(m + 1);
  tab.s_du.resize(m + 1);
  const double t0 = c.t_begin(), t1 = c.t_end();
  auto f = [&c, &tol](double t) {
    const DualVec3 d1 = c.derivative(1, t);
    if (norm(d1.re) <= tol.tol_zero)
      raise(ErrorCode::IrregularCurve, "zero speed inside parameter range");
    return norm(d1, tol);
  };
  tab.t[0] = t0;
  for (int i = 0; i < m; ++i) {
    tab.t[i + 1] = t0 + (t1 - t0) * (i + 1) / m;
    const DualScalar piece = integrate(f, tab.t[i], tab.t[i + 1], 1e-13);
    tab.s[i + 1] = tab.s[i] + piece.re;
    tab.s_du[i + 1] = tab.s_du[i] + piece.du;
  }
  return tab;
}

} // namespace

ArcCurve reparameterize_by_arclength(const DualCurve& c, const Tolerances& tol) {
  auto tab = std::make_shared<ArcTable>(build_arc_table(c, tol, 1024));
  auto curve = std::make_shared<DualCurve>(c);
  const double length = tab->s.back();
  Tolerances tols = tol;

  auto t_of_s = [tab, curve, tols](double s) -> double {
    s = std::clamp(s, 0.0, tab->s.back());
    auto it = std::upper_bound(tab->s.begin(), tab->s.end(), s);
    std::size_t i = static_cast<std::size_t>(std::distance(tab->s.begin(), it));
    i = std::clamp<std::size_t>(i, 1, tab->s.size() - 1) - 1;
    const double lo = tab->t[i], hi = tab->t[i + 1];
    if (s == tab->s[i]) return lo;
    auto speed = [&](double t) { return norm(curve->derivative(1, t).re); };
    auto g = [&](double t) {
      auto f = [&](double u) { return norm(curve->derivative(1, u), tols); };
      return tab->s[i] + integrate(f, lo, t, 1e-13).re - s;
    };
    const double frac = (s - tab->s[i]) / (tab->s[i + 1] - tab->s[i]);
    return guarded_newton(g, speed, lo, hi, lo + frac * (hi - lo),
                          1e-13 * std::max(1.0, std::abs(hi)));
  };

  auto deriv = [curve, t_of_s](int order, double s) -> DualVec3 {
    const double t = t_of_s(s);
    const DualVec3 c1 = curve->derivative(1, t);
    const DualVec3 c2 = curve->derivative(2, t);
    const double v = norm(c1.re);
    const double tp = 1.0 / v;
    if (order == 1) return c1 * DualScalar{tp};
    const DualVec3 c3 = curve->derivative(3, t);
    const double vp = dot(c1.re, c2.re) / v;
    const double tpp = -vp / (v * v * v);
    if (order == 2) return c2 * DualScalar{tp * tp} + c1 * DualScalar{tpp};
    const double vpp = (dot(c2.re, c2.re) + dot(c1.re, c3.re) - vp * vp) / v;
    const double tppp = (3 * vp * vp - v * vpp) / (v * v * v * v * v);
    return c3 * DualScalar{tp * tp * tp} + c2 * DualScalar{3 * tp * tpp} + c1 * DualScalar{tppp};
  };

  ArcCurve out;
  out.curve = DualCurve(
      0.0, length, [curve, t_of_s](double s) { return curve->position(t_of_s(s)); },
      [deriv](double s) { return deriv(1, s); }, [deriv](double s) { return deriv(2, s); },
      [deriv](double s) { return deriv(3, s); }, c.derivative_mode());
  out.t_of_s = t_of_s;
  out.stilde = [tab, curve, t_of_s, tols](double s) -> DualScalar {
    const double t = t_of_s(s);
    auto it = std::upper_bound(tab->t.begin(), tab->t.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(tab->t.begin(), it));
    i = std::clamp<std::size_t>(i, 1, tab->t.size() - 1) - 1;
    auto f = [&](double u) { return norm(curve->derivative(1, u), tols); };
    const double du = tab->s_du[i] + integrate(f, tab->t[i], t, 1e-13).du;
    return {s, du};
  };
  return out;
}

ArcCurve make_arc_curve(const DualCurve& c, const Tolerances& tol) {
  for (int i = 0; i <= 64; ++i) {
    const double t = c.t_begin() + (c.t_end() - c.t_begin()) * i / 64.0;
    if (std::abs(norm(c.derivative(1, t).re) - 1.0) > 1e-6)
      raise(ErrorCode::InvalidInput, "curve is not unit real speed");
  }
  auto tab = std::make_shared<ArcTable>(build_arc_table(c, tol, 512));
  auto curve = std::make_shared<DualCurve>(c);
  const double t0 = c.t_begin();
  Tolerances tols = tol;

  ArcCurve out;
  out.curve = c;
  out.t_of_s = [t0](double s) { return t0 + s; };
  out.stilde = [tab, curve, t0, tols](double u) -> DualScalar {
    auto it = std::upper_bound(tab->t.begin(), tab->t.end(), u);
    std::size_t i = static_cast<std::size_t>(std::distance(tab->t.begin(), it));
    i = std::clamp<std::size_t>(i, 1, tab->t.size() - 1) - 1;
    auto f = [&](double w) { return norm(curve->derivative(1, w), tols); };
    const double du = tab->s_du[i] + integrate(f, tab->t[i], u, 1e-13).du;
    return {u - t0, du};
  };
  return out;
}

StraightLineResult classify_straight_line(const DualCurve& c, const Tolerances& tol,
                                          int n_samples) {
  StraightLineResult out;
  const double t0 = c.t_begin(), t1 = c.t_end();
  for (int i = 0; i < n_samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (n_samples - 1);
    const DualVec3 d1 = c.derivative(1, t);
    const DualVec3 d2 = c.derivative(2, t);
    const double v = norm(d1.re);
    if (v <= tol.tol_zero) raise(ErrorCode::IrregularCurve, "zero speed while classifying");
    const DualVec3 cr = cross(d1, d2);
    // Curvature magnitude taken slotwise so exact lines (zero cross product)
    // stay inside dual arithmetic's domain.
    out.max_kappa_re = std::max(out.max_kappa_re, norm(cr.re) / (v * v * v));
    out.max_kappa_du = std::max(out.max_kappa_du, norm(cr.du) / (v * v * v));
  }
  out.is_line = out.max_kappa_re < tol.tol_classify && out.max_kappa_du < tol.tol_classify;
  if (!out.is_line) return out;

  const double t_mid = 0.5 * (t0 + t1);
  out.direction = normalize(c.derivative(1, t_mid), tol);
  out.through = c.position(t_mid);
  for (int i = 0; i < n_samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (n_samples - 1);
    const DualVec3 r = cross(c.position(t) - *out.through, out.direction->vec());
    out.fit_residual_re = std::max(out.fit_residual_re, norm(r.re));
    out.fit_residual_du = std::max(out.fit_residual_du, norm(r.du));
  }
  return out;
}

PlanarResult classify_planar(const DualCurve& c, const Tolerances& tol, int n_samples) {
  PlanarResult out;
  const double t0 = c.t_begin(), t1 = c.t_end();
  const FrenetData f0 = frenet(c, t0, tol);
  out.normal = f0.b_vec;
  out.through = c.position(t0);
  for (int i = 0; i < n_samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (n_samples - 1);
    const FrenetData f = frenet(c, t, tol);
    out.max_tau_re = std::max(out.max_tau_re, std::abs(f.tau.re));
    out.max_tau_du = std::max(out.max_tau_du, std::abs(f.tau.du));
    const DualScalar off = dot(c.position(t) - *out.through, out.normal->vec());
    out.max_plane_re = std::max(out.max_plane_re, std::abs(off.re));
    out.max_plane_du = std::max(out.max_plane_du, std::abs(off.du));
  }
  out.is_planar = out.max_tau_re < tol.tol_classify && out.max_tau_du < tol.tol_classify &&
                  out.max_plane_re < tol.tol_classify && out.max_plane_du < tol.tol_classify;
  return out;
}

} // namespace dualfrenet
