#include "dualfrenet/frenet_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dualfrenet/errors.hpp"

namespace dualfrenet {
namespace {

// Orthonormality drift allowed per step before the step size is rejected.
constexpr double kDriftBudget = 1e-6;

DualScalar fd1(const std::function<DualScalar(double)>& f, double s, double h) {
  return (f(s - 2 * h) - DualScalar{8.0} * f(s - h) + DualScalar{8.0} * f(s + h) -
          f(s + 2 * h)) /
         DualScalar{12.0 * h};
}

struct State {
  DualVec3 a, t, n, b;
};

State operator+(const State& x, const State& y) {
  return {x.a + y.a, x.t + y.t, x.n + y.n, x.b + y.b};
}

State operator*(const State& x, double k) {
  const DualScalar s{k};
  return {x.a * s, x.t * s, x.n * s, x.b * s};
}

double ortho_drift(const State& x) {
  double worst = 0.0;
  auto track = [&worst](DualScalar v, double target) {
    worst = std::max(worst, std::abs(v.re - target));
    worst = std::max(worst, std::abs(v.du));
  };
  track(dot(x.t, x.t), 1.0);
  track(dot(x.n, x.n), 1.0);
  track(dot(x.b, x.b), 1.0);
  track(dot(x.t, x.n), 0.0);
  track(dot(x.t, x.b), 0.0);
  track(dot(x.n, x.b), 0.0);
  return worst;
}

// Gram-Schmidt sweep in dual arithmetic.  Normalizing by the dual norm lands
// each vector back on the dual unit sphere exactly (both constraints), and
// the cross product restores right-handedness.
void orthonormalize(State& x, const Tolerances& tol) {
  x.t = x.t / norm(x.t, tol);
  DualVec3 n = x.n - x.t * dot(x.n, x.t);
  x.n = n / norm(n, tol);
  x.b = cross(x.t, x.n);
}

} // namespace

ScalarProfile const_profile(DualScalar value) {
  ScalarProfile p;
  p.f = [value](double) { return value; };
  p.df = [](double) { return DualScalar{}; };
  p.d2f = [](double) { return DualScalar{}; };
  return p;
}

ScalarProfile tan_profile() {
  ScalarProfile p;
  p.f = [](double s) { return DualScalar{std::tan(s)}; };
  p.df = [](double s) {
    const double c = std::cos(s);
    return DualScalar{1.0 / (c * c)};
  };
  p.d2f = [](double s) {
    const double c = std::cos(s);
    return DualScalar{2.0 * std::tan(s) / (c * c)};
  };
  return p;
}

ScalarProfile poly_profile(std::vector<double> re_coeffs, std::vector<double> du_coeffs) {
  const std::size_t n = std::max(re_coeffs.size(), du_coeffs.size());
  std::vector<DualScalar> c(std::max<std::size_t>(n, 1), DualScalar{});
  for (std::size_t i = 0; i < re_coeffs.size(); ++i) c[i].re = re_coeffs[i];
  for (std::size_t i = 0; i < du_coeffs.size(); ++i) c[i].du = du_coeffs[i];

  auto derive = [](const std::vector<DualScalar>& v) {
    std::vector<DualScalar> d;
    for (std::size_t k = 1; k < v.size(); ++k)
      d.push_back(DualScalar{static_cast<double>(k)} * v[k]);
    if (d.empty()) d.push_back(DualScalar{});
    return d;
  };
  auto horner = [](const std::vector<DualScalar>& v, double s) {
    DualScalar acc{};
    for (std::size_t i = v.size(); i-- > 0;) acc = acc * DualScalar{s} + v[i];
    return acc;
  };

  const std::vector<DualScalar> c1 = derive(c);
  const std::vector<DualScalar> c2 = derive(c1);
  ScalarProfile p;
  p.f = [c, horner](double s) { return horner(c, s); };
  p.df = [c1, horner](double s) { return horner(c1, s); };
  p.d2f = [c2, horner](double s) { return horner(c2, s); };
  return p;
}

ScalarProfile fill_derivatives(ScalarProfile p) {
  if (!p.f) raise(ErrorCode::InvalidInput, "profile without a value channel");
  if (!p.df) {
    auto f = p.f;
    p.df = [f](double s) { return fd1(f, s, 1e-5 * std::max(1.0, std::abs(s))); };
  }
  if (!p.d2f) {
    auto df = p.df;
    p.d2f = [df](double s) { return fd1(df, s, 1e-3 * std::max(1.0, std::abs(s))); };
  }
  return p;
}

SynthesizedCurve::SynthesizedCurve(std::shared_ptr<const HermiteTables> tables,
                                   std::vector<DualVec3> frame_t, std::vector<DualVec3> frame_n,
                                   std::vector<DualVec3> frame_b, std::vector<DualScalar> kappa,
                                   std::vector<DualScalar> tau, double step)
    : tables_(std::move(tables)), frame_t_(std::move(frame_t)), frame_n_(std::move(frame_n)),
      frame_b_(std::move(frame_b)), kappa_(std::move(kappa)), tau_(std::move(tau)), step_(step) {}

DualCurve SynthesizedCurve::curve() const { return hermite_sampled_curve(tables_); }

ArcCurve SynthesizedCurve::arc_curve() const {
  ArcCurve out;
  out.curve = curve();
  const double s0 = tables_->nodes.front();
  out.t_of_s = [s0](double s) { return s0 + s; };
  // In the s-tilde = s gauge the dual slot of the arc length is identically
  // zero: the tangent is kept dual-unit by the orthonormalization sweep.
  out.stilde = [s0](double u) { return DualScalar{u - s0, 0.0}; };
  return out;
}

SynthesizedCurve synthesize_frenet(const FrenetProfile& p, double step, const Tolerances& tol) {
  if (!(step > 0.0)) raise(ErrorCode::InvalidInput, "step must be positive");
  if (!(p.s1 > p.s0)) raise(ErrorCode::InvalidInput, "empty arc-length range");

  const ScalarProfile kap = fill_derivatives(p.kappa);
  const ScalarProfile tau = fill_derivatives(p.tau);

  State x{p.initial_point, p.frame_t, p.frame_n, p.frame_b};
  // The initial frame must already sit on the dual unit sphere and be
  // pairwise dual-orthogonal; 1e-12 keeps hand-built frames honest.
  if (ortho_drift(x) > 1e-12)
    raise(ErrorCode::InvalidInput, "initial frame is not dual-orthonormal");
  if (dot(cross(x.t.re, x.n.re), x.b.re) < 0.0)
    raise(ErrorCode::InvalidInput, "initial frame is left-handed");

  auto kappa_at = [&kap](double s) {
    const DualScalar k = kap.f(s);
    if (k.re <= 0.0) raise(ErrorCode::ProfileSingularity, "curvature real part not positive");
    return k;
  };
  auto rhs = [&kappa_at, &tau](double s, const State& y) -> State {
    const DualScalar k = kappa_at(s);
    const DualScalar t = tau.f(s);
    return {y.t, y.n * k, y.b * t - y.t * k, -(y.n * t)};
  };

  const int n_steps = std::max(1, static_cast<int>(std::llround((p.s1 - p.s0) / step)));
  const double h = (p.s1 - p.s0) / n_steps;

  auto tables = std::make_shared<HermiteTables>();
  std::vector<DualVec3> ft, fn, fb;
  std::vector<DualScalar> ks, ts;
  tables->nodes.reserve(n_steps + 1);
  tables->p.reserve(n_steps + 1);
  tables->d1.reserve(n_steps + 1);
  tables->d2.reserve(n_steps + 1);
  tables->d3.reserve(n_steps + 1);
  tables->d4.reserve(n_steps + 1);

  auto record = [&](double s, const State& y) {
    const DualScalar k = kappa_at(s);
    const DualScalar kp = kap.df(s);
    const DualScalar kpp = kap.d2f(s);
    const DualScalar t = tau.f(s);
    const DualScalar tp = tau.df(s);
    tables->nodes.push_back(s);
    tables->p.push_back(y.a);
    tables->d1.push_back(y.t);
    tables->d2.push_back(y.n * k);
    tables->d3.push_back(y.t * (-(k * k)) + y.n * kp + y.b * (k * t));
    tables->d4.push_back(y.t * (DualScalar{-3.0} * k * kp) +
                         y.n * (kpp - k * k * k - k * t * t) +
                         y.b * (DualScalar{2.0} * kp * t + k * tp));
    ft.push_back(y.t);
    fn.push_back(y.n);
    fb.push_back(y.b);
    ks.push_back(k);
    ts.push_back(t);
  };

  record(p.s0, x);
  for (int i = 0; i < n_steps; ++i) {
    const double s = p.s0 + i * h;
    const State k1 = rhs(s, x);
    const State k2 = rhs(s + 0.5 * h, x + k1 * (0.5 * h));
    const State k3 = rhs(s + 0.5 * h, x + k2 * (0.5 * h));
    const State k4 = rhs(s + h, x + k3 * h);
    x = x + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);

    if (ortho_drift(x) > kDriftBudget)
      raise(ErrorCode::StepTooLarge, "frame drift exceeds the per-step budget");
    orthonormalize(x, tol);
    record(p.s0 + (i + 1) * h, x);
  }

  return SynthesizedCurve(std::move(tables), std::move(ft), std::move(fn), std::move(fb),
                          std::move(ks), std::move(ts), h);
}

} // namespace dualfrenet
