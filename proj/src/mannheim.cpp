#include "dualfrenet/mannheim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dualfrenet/errors.hpp"
#include "dualfrenet/numerics.hpp"

namespace dualfrenet {

namespace {

// A partner whose real trace collapses to a point is reported as degenerate.
// The gate sits above the floating-point noise of an exactly collapsing
// offset but far below any real speed a usable curve produces.
constexpr double kDegenerateSpeed = 1e-9;

// Quantities exhibited as non-constant must vary by at least this much
// relative to their mean, otherwise the exhibition proves nothing.
constexpr double kSpreadFloor = 0.01;

// Stride used when resampling a curve's frame field into node tables.
constexpr double kFrameStride = 5e-3;

DualScalar dual_abs(const DualScalar& x) {
  if (x.re == 0.0) {
    raise(ErrorCode::ZeroRealPart, "dual absolute value needs a nonzero real part");
  }
  return x.re > 0.0 ? x : DualScalar{-x.re, -x.du};
}

struct ResidualTracker {
  double re = 0.0;
  double du = 0.0;

  void add(const DualScalar& r) {
    re = std::max(re, std::abs(r.re));
    du = std::max(du, std::abs(r.du));
  }

  void add(const DualVec3& r) {
    re = std::max(re, norm(r.re));
    du = std::max(du, norm(r.du));
  }
};

CheckReport close_report(std::string name, const ResidualTracker& t, double tolerance,
                           int samples, bool flagged = false, std::string note = "") {
  CheckReport rep;
  rep.name = std::move(name);
  rep.max_abs_residual_re = t.re;
  rep.max_abs_residual_du = t.du;
  rep.tolerance = tolerance;
  rep.pass = t.re <= tolerance && t.du <= tolerance;
  rep.samples = samples;
  rep.flagged = flagged;
  rep.note = std::move(note);
  return rep;
}

// Foot points of c's samples on c1, found by driving the real tangential
// component of the connecting segment to zero. Warm starts assume both
// parameters advance together, which holds for the nearly-arclength curves
// this is used on.
std::vector<double> build_correspondence(const DualCurve& c, const DualCurve& c1,
                                         const std::vector<double>& u) {
  const double lo1 = c1.t_begin();
  const double hi1 = c1.t_end();
  std::vector<double> out(u.size());

  auto tangential = [&c1](const Vec3& alpha, double v) {
    const Vec3 a1 = c1.position(v).re;
    Vec3 d1 = c1.derivative(1, v).re;
    const double sp = norm(d1);
    if (sp <= 0.0) {
      raise(ErrorCode::IrregularCurve, "zero speed while projecting onto the partner");
    }
    return dot(alpha - a1, d1 / sp);
  };

  for (std::size_t i = 0; i < u.size(); ++i) {
    const Vec3 alpha = c.position(u[i]).re;
    double warm;
    if (i == 0) {
      // Coarse scan for the nearest sample; Newton takes it from there.
      const int m = static_cast<int>(4 * u.size());
      double best = std::numeric_limits<double>::infinity();
      warm = lo1;
      for (int j = 0; j <= m; ++j) {
        const double v = lo1 + (hi1 - lo1) * j / m;
        const Vec3 diff = alpha - c1.position(v).re;
        const double d2 = dot(diff, diff);
        if (d2 < best) {
          best = d2;
          warm = v;
        }
      }
    } else {
      warm = out[i - 1] + (u[i] - u[i - 1]);
    }
    warm = std::clamp(warm, lo1, hi1);

    auto g = [&tangential, &alpha](double v) { return tangential(alpha, v); };
    auto dg = [&g](double v) {
      const double h = 1e-6 * std::max(1.0, std::abs(v));
      return (g(v + h) - g(v - h)) / (2.0 * h);
    };

    // g decreases through its root, so bracket with g(blo) > 0 > g(bhi).
    double step = std::max((hi1 - lo1) / (4.0 * static_cast<double>(u.size())), 1e-12);
    double blo = std::max(lo1, warm - step);
    double bhi = std::min(hi1, warm + step);
    double glo = g(blo);
    double ghi = g(bhi);
    for (int guard = 0; guard < 80 && (glo <= 0.0 || ghi >= 0.0); ++guard) {
      bool grew = false;
      if (glo <= 0.0 && blo > lo1) {
        blo = std::max(lo1, blo - step);
        glo = g(blo);
        grew = true;
      } else if (ghi >= 0.0 && bhi < hi1) {
        bhi = std::min(hi1, bhi + step);
        ghi = g(bhi);
        grew = true;
      }
      step *= 2.0;
      if (!grew) break;
    }
    if (glo == 0.0) {
      out[i] = blo;
    } else if (ghi == 0.0) {
      out[i] = bhi;
    } else if (glo > 0.0 && ghi < 0.0) {
      out[i] = guarded_newton(g, dg, blo, bhi, warm, 1e-12 * std::max(1.0, std::abs(warm)));
    } else {
      raise(ErrorCode::NoCorrespondence, "foot point not bracketed on the partner curve");
    }
  }

  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) {
      raise(ErrorCode::NoCorrespondence, "correspondence does not advance monotonically");
    }
  }
  return out;
}

// Frame field of a curve resampled onto a uniform node grid, the raw
// material for building offset curves without re-differencing positions.
struct FrameSamples {
  std::vector<double> v;
  std::vector<DualVec3> p, t, n, b;
  std::vector<DualScalar> w, kap, tau;
};

FrameSamples sample_frames(const DualCurve& c, const Tolerances& tol) {
  const double lo = c.t_begin();
  const double hi = c.t_end();
  int n = static_cast<int>(std::ceil((hi - lo) / kFrameStride)) + 1;
  n = std::max(n, 9);

  FrameSamples fs;
  fs.v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double v = lo + (hi - lo) * i / (n - 1);
    const FrenetData f = frenet(c, v, tol);
    fs.v.push_back(v);
    fs.p.push_back(c.position(v));
    fs.t.push_back(f.t_vec.vec());
    fs.n.push_back(f.n_vec.vec());
    fs.b.push_back(f.b_vec.vec());
    fs.w.push_back(f.speed);
    fs.kap.push_back(f.kappa);
    fs.tau.push_back(f.tau);
  }
  return fs;
}

}  // namespace

double relative_spread(const std::vector<double>& values) {
  if (values.empty()) {
    raise(ErrorCode::InvalidInput, "spread of an empty sample set");
  }
  double lo = values[0], hi = values[0], mean = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mean += v;
  }
  mean /= static_cast<double>(values.size());
  return (hi - lo) / std::max(std::abs(mean), 1e-300);
}

DualCurve mannheim_from_partner(const DualCurve& c1, DualScalar lambda,
                                const Tolerances& tol) {
  if (lambda.re == 0.0) {
    raise(ErrorCode::PureDualLambda, "offset constant has zero real part");
  }
  const FrameSamples fs = sample_frames(c1, tol);
  const std::size_t n = fs.v.size();
  const double h = fs.v[1] - fs.v[0];

  // The offset alpha1 + lambda*b1 is differentiated through the frame
  // equations; only scalar node tables are differenced numerically.
  std::vector<DualScalar> tw(n);
  for (std::size_t i = 0; i < n; ++i) tw[i] = fs.tau[i] * fs.w[i];
  const std::vector<DualScalar> wp = table_derivative(fs.w, h);
  const std::vector<DualScalar> twp = table_derivative(tw, h);

  std::vector<DualScalar> at(n), cn(n), db(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DualScalar w2 = fs.w[i] * fs.w[i];
    at[i] = wp[i] + lambda * fs.kap[i] * fs.tau[i] * w2;
    cn[i] = fs.kap[i] * w2 - lambda * twp[i];
    db[i] = DualScalar{-1.0} * lambda * fs.tau[i] * fs.tau[i] * w2;
  }
  const std::vector<DualScalar> atp = table_derivative(at, h);
  const std::vector<DualScalar> cnp = table_derivative(cn, h);
  const std::vector<DualScalar> dbp = table_derivative(db, h);

  auto tb = std::make_shared<HermiteTables>();
  tb->nodes = fs.v;
  for (std::size_t i = 0; i < n; ++i) {
    const DualScalar kw = fs.kap[i] * fs.w[i];
    const DualScalar tww = tw[i];
    tb->p.push_back(fs.p[i] + fs.b[i] * lambda);
    tb->d1.push_back(fs.t[i] * fs.w[i] - fs.n[i] * (lambda * tww));
    tb->d2.push_back(fs.t[i] * at[i] + fs.n[i] * cn[i] + fs.b[i] * db[i]);
    tb->d3.push_back(fs.t[i] * (atp[i] - cn[i] * kw) +
                     fs.n[i] * (at[i] * kw + cnp[i] - db[i] * tww) +
                     fs.b[i] * (cn[i] * tww + dbp[i]));
  }
  return reparameterize_by_arclength(hermite_sampled_curve(tb), tol).curve;
}

DualCurve partner_from_mannheim(const DualCurve& c, DualScalar lambda,
                                const Tolerances& tol) {
  if (lambda.re == 0.0) {
    raise(ErrorCode::PureDualLambda, "offset constant has zero real part");
  }
  const FrameSamples fs = sample_frames(c, tol);
  const std::size_t n = fs.v.size();
  const double h = fs.v[1] - fs.v[0];

  // alpha - lambda*n differentiated through the frame equations.
  std::vector<DualScalar> et(n), g0(n);
  for (std::size_t i = 0; i < n; ++i) {
    et[i] = fs.w[i] + lambda * fs.kap[i] * fs.w[i];
    g0[i] = DualScalar{-1.0} * lambda * fs.tau[i] * fs.w[i];
  }

  double top_speed = 0.0;
  std::vector<DualVec3> d1(n);
  for (std::size_t i = 0; i < n; ++i) {
    d1[i] = fs.t[i] * et[i] + fs.b[i] * g0[i];
    top_speed = std::max(top_speed, norm(d1[i].re));
  }
  if (top_speed < kDegenerateSpeed) {
    raise(ErrorCode::DegeneratePartner, "partner trace collapses to a point");
  }

  const std::vector<DualScalar> etp = table_derivative(et, h);
  const std::vector<DualScalar> gb = table_derivative(g0, h);
  std::vector<DualScalar> fn(n);
  for (std::size_t i = 0; i < n; ++i) {
    fn[i] = et[i] * fs.kap[i] * fs.w[i] - g0[i] * fs.tau[i] * fs.w[i];
  }
  const std::vector<DualScalar> etpp = table_derivative(etp, h);
  const std::vector<DualScalar> fnp = table_derivative(fn, h);
  const std::vector<DualScalar> gbp = table_derivative(gb, h);

  auto tb = std::make_shared<HermiteTables>();
  tb->nodes = fs.v;
  for (std::size_t i = 0; i < n; ++i) {
    const DualScalar kw = fs.kap[i] * fs.w[i];
    const DualScalar tww = fs.tau[i] * fs.w[i];
    tb->p.push_back(fs.p[i] - fs.n[i] * lambda);
    tb->d1.push_back(d1[i]);
    tb->d2.push_back(fs.t[i] * etp[i] + fs.n[i] * fn[i] + fs.b[i] * gb[i]);
    tb->d3.push_back(fs.t[i] * (etpp[i] - fn[i] * kw) +
                     fs.n[i] * (etp[i] * kw + fnp[i] - gb[i] * tww) +
                     fs.b[i] * (fn[i] * tww + gbp[i]));
  }
  return reparameterize_by_arclength(hermite_sampled_curve(tb), tol).curve;
}

PairCheckResult pair_check(const DualCurve& c, const DualCurve& c1, const Tolerances& tol,
                           int n_samples) {
  if (n_samples < 8) {
    raise(ErrorCode::InvalidInput, "pair check needs at least 8 samples");
  }
  const double lo = c.t_begin();
  const double hi = c.t_end();
  const double spacing = (hi - lo) / n_samples;

  // Midpoint grid: uniform, and inset so foot points stay interior.
  std::vector<double> u(n_samples);
  for (int i = 0; i < n_samples; ++i) u[i] = lo + (i + 0.5) * spacing;
  std::vector<double> u1 = build_correspondence(c, c1, u);

  PairCheckResult res;
  res.report.name = "pair_normal_binormal";
  res.report.tolerance = tol.tol_pair;
  res.report.samples = n_samples;

  MannheimPair pair;
  pair.c = c;
  pair.c1 = c1;
  pair.u = u;
  pair.u1 = std::move(u1);

  try {
    for (int i = 0; i < n_samples; ++i) {
      pair.frame_c.push_back(frenet(c, pair.u[i], tol));
      pair.frame_c1.push_back(frenet(c1, pair.u1[i], tol));
    }
  } catch (const GeomError& e) {
    if (e.code() == ErrorCode::VanishingCurvature) {
      res.report.flagged = true;
      res.report.pass = false;
      res.report.note =
          "frame undefined on one curve (vanishing curvature), so the normal/binormal "
          "coincidence is ambiguous here";
      return res;
    }
    throw;
  }

  for (int i = 0; i < n_samples; ++i) {
    pair.pos_c.push_back(c.position(pair.u[i]));
    pair.pos_c1.push_back(c1.position(pair.u1[i]));
  }

  const double sg = dot(pair.frame_c[0].n_vec.vec(), pair.frame_c1[0].b_vec.vec()).re;
  pair.sigma = sg >= 0.0 ? 1.0 : -1.0;

  ResidualTracker par;
  for (int i = 0; i < n_samples; ++i) {
    par.add(cross(pair.frame_c[i].n_vec.vec(), pair.frame_c1[i].b_vec.vec()));
  }

  // Offset constant recovered by projecting the connecting segment onto b1.
  std::vector<double> lam_re(n_samples), lam_du(n_samples);
  DualScalar lam_mean{};
  for (int i = 0; i < n_samples; ++i) {
    const DualScalar li =
        dot(pair.pos_c[i] - pair.pos_c1[i], pair.frame_c1[i].b_vec.vec());
    lam_re[i] = li.re;
    lam_du[i] = li.du;
    lam_mean = lam_mean + li;
  }
  lam_mean = lam_mean / DualScalar{static_cast<double>(n_samples)};
  pair.lambda = lam_mean;
  const auto minmax_re = std::minmax_element(lam_re.begin(), lam_re.end());
  const auto minmax_du = std::minmax_element(lam_du.begin(), lam_du.end());
  const double lam_spread_re = *minmax_re.second - *minmax_re.first;
  const double lam_spread_du = *minmax_du.second - *minmax_du.first;

  // Tangent rotation angle, unwrapped along the grid; the dual slot comes
  // from differentiating atan2 at the sampled cosine and sine.
  std::vector<double> th_re(n_samples);
  std::vector<DualScalar> cos_v(n_samples), sin_v(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    cos_v[i] = dot(pair.frame_c[i].t_vec.vec(), pair.frame_c1[i].t_vec.vec());
    sin_v[i] = dot(pair.frame_c[i].t_vec.vec(), pair.frame_c1[i].n_vec.vec());
    th_re[i] = std::atan2(sin_v[i].re, cos_v[i].re);
  }
  unwrap_angles(th_re);
  pair.theta.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    pair.theta[i] = DualScalar{th_re[i],
                               cos_v[i].re * sin_v[i].du - sin_v[i].re * cos_v[i].du};
  }

  // Dual arc lengths accumulated along both correspondence traces.
  pair.stilde.resize(n_samples);
  pair.stilde1.resize(n_samples);
  pair.stilde[0] = dual_arc_length(c, lo, pair.u[0], tol);
  pair.stilde1[0] = dual_arc_length(c1, c1.t_begin(), pair.u1[0], tol);
  for (int i = 1; i < n_samples; ++i) {
    pair.stilde[i] = pair.stilde[i - 1] + dual_arc_length(c, pair.u[i - 1], pair.u[i], tol);
    pair.stilde1[i] =
        pair.stilde1[i - 1] + dual_arc_length(c1, pair.u1[i - 1], pair.u1[i], tol);
  }

  bool cot_safe = true;
  for (int i = 0; i < n_samples; ++i) {
    if (std::abs(std::sin(pair.theta[i].re)) <= tol.tol_parallel) cot_safe = false;
  }
  if (cot_safe) {
    const DualScalar lam_n = DualScalar{pair.sigma} * pair.lambda;
    pair.mu.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
      pair.mu[i] = lam_n * cos(pair.theta[i]) / sin(pair.theta[i]);
    }
  }

  res.report.max_abs_residual_re = par.re;
  res.report.max_abs_residual_du = par.du;
  res.report.pass = par.re <= tol.tol_pair && par.du <= tol.tol_pair;
  std::ostringstream os;
  os << "sigma " << (pair.sigma > 0.0 ? "+1" : "-1") << ", lambda (" << lam_mean.re << ", "
     << lam_mean.du << "), lambda spread (" << lam_spread_re << ", " << lam_spread_du << ")";
  res.report.note = os.str();

  if (res.report.pass) {
    res.pair = std::move(pair);
  }
  return res;
}

CheckReport check_mannheim_condition(const DualCurve& c, DualScalar lambda,
                                       const Tolerances& tol, int n_samples) {
  if (lambda.re == 0.0) {
    raise(ErrorCode::PureDualLambda, "offset constant has zero real part");
  }
  if (n_samples < 2) {
    raise(ErrorCode::InvalidInput, "condition check needs at least 2 samples");
  }
  const double lo = c.t_begin();
  const double hi = c.t_end();
  ResidualTracker t;
  for (int i = 0; i < n_samples; ++i) {
    const double v = lo + (hi - lo) * i / (n_samples - 1);
    const FrenetData f = frenet(c, v, tol);
    t.add(f.kappa - lambda * (f.kappa * f.kappa + f.tau * f.tau));
  }
  return close_report("mannheim_condition", t, tol.tol_thm, n_samples);
}

CheckReport check_partner_ode(const DualCurve& c1, DualScalar lambda,
                                const Tolerances& tol, int n_samples) {
  if (lambda.re == 0.0) {
    raise(ErrorCode::PureDualLambda, "offset constant has zero real part");
  }
  if (n_samples < 8) {
    raise(ErrorCode::InvalidInput, "torsion slope check needs at least 8 samples");
  }
  const double lo = c1.t_begin();
  const double hi = c1.t_end();
  const double h = (hi - lo) / (n_samples - 1);

  std::vector<DualScalar> tau(n_samples), kap(n_samples), speed(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const FrenetData f = frenet(c1, lo + i * h, tol);
    tau[i] = f.tau;
    kap[i] = f.kappa;
    speed[i] = f.speed;
  }
  const std::vector<DualScalar> dtau = table_derivative(tau, h);

  ResidualTracker t;
  for (int i = 0; i < n_samples; ++i) {
    const DualScalar slope = dtau[i] / speed[i];
    t.add(slope - (kap[i] / lambda) * (DualScalar{1.0} + lambda * lambda * tau[i] * tau[i]));
  }
  return close_report("partner_torsion_slope", t, tol.tol_ode, n_samples);
}

MannheimPair generate_pair(DualScalar lambda, const ScalarProfile& tau1, double s_min,
                           double s_max, double step, const Tolerances& tol, int n_samples) {
  if (lambda.re == 0.0) {
    raise(ErrorCode::PureDualLambda, "offset constant has zero real part");
  }
  const ScalarProfile t1 = fill_derivatives(tau1);

  // Curvature profile forced by the coupling between the partner's torsion
  // slope and its curvature.
  ScalarProfile k1;
  k1.f = [lambda, t1](double s) {
    const DualScalar tv = t1.f(s);
    return lambda * t1.df(s) / (DualScalar{1.0} + lambda * lambda * tv * tv);
  };
  k1.df = [lambda, t1](double s) {
    const DualScalar tv = t1.f(s);
    const DualScalar tp = t1.df(s);
    const DualScalar den = DualScalar{1.0} + lambda * lambda * tv * tv;
    const DualScalar dden = DualScalar{2.0} * lambda * lambda * tv * tp;
    return lambda * (t1.d2f(s) * den - tp * dden) / (den * den);
  };
  const ScalarProfile k1f = fill_derivatives(k1);

  FrenetProfile prof;
  prof.kappa = k1f;
  prof.tau = t1;
  prof.s0 = s_min;
  prof.s1 = s_max;
  const SynthesizedCurve syn = synthesize_frenet(prof, step, tol);

  // Offset tables directly from the synthesized frames; unit real speed of
  // the partner makes the closed-form derivatives exact.
  const HermiteTables& base = syn.tables();
  const std::size_t n = base.nodes.size();
  auto off = std::make_shared<HermiteTables>();
  off->nodes = base.nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = base.nodes[i];
    const DualScalar kp = syn.kappa()[i];
    const DualScalar tu = syn.tau()[i];
    const DualScalar kpp = k1f.df(s);
    const DualScalar tup = t1.df(s);
    const DualScalar tupp = t1.d2f(s);
    const DualVec3& tv = syn.frame_t()[i];
    const DualVec3& nv = syn.frame_n()[i];
    const DualVec3& bv = syn.frame_b()[i];
    off->p.push_back(base.p[i] + bv * lambda);
    off->d1.push_back(tv - nv * (lambda * tu));
    off->d2.push_back(tv * (lambda * kp * tu) + nv * (kp - lambda * tup) -
                      bv * (lambda * tu * tu));
    off->d3.push_back(
        tv * (lambda * kpp * tu + DualScalar{2.0} * lambda * kp * tup - kp * kp) +
        nv * (kpp + lambda * (kp * kp * tu - tupp + tu * tu * tu)) +
        bv * (kp * tu - DualScalar{3.0} * lambda * tu * tup));
  }

  const ArcCurve arc = reparameterize_by_arclength(hermite_sampled_curve(off), tol);
  PairCheckResult res = pair_check(arc.curve, syn.curve(), tol, n_samples);
  if (!res.pair) {
    std::ostringstream os;
    os << "constructed pair fails its own coincidence check: residual ("
       << res.report.max_abs_residual_re << ", " << res.report.max_abs_residual_du
       << ") vs tolerance " << res.report.tolerance;
    raise(ErrorCode::PairValidationFailed, os.str());
  }
  return *std::move(res.pair);
}

std::vector<CheckReport> verify_pair_identities(const MannheimPair& p, const Tolerances& tol) {
  const std::size_t n = p.u.size();
  if (n < 8 || p.frame_c.size() != n || p.frame_c1.size() != n || p.pos_c.size() != n ||
      p.pos_c1.size() != n || p.stilde.size() != n || p.stilde1.size() != n ||
      p.theta.size() != n) {
    raise(ErrorCode::InvalidInput, "pair is missing cached grid data");
  }
  const double h = p.u[1] - p.u[0];
  const int ns = static_cast<int>(n);
  const DualScalar lam_b = p.lambda;
  const DualScalar lam_n = DualScalar{p.sigma} * lam_b;
  const DualScalar sg{p.sigma};

  const std::vector<DualScalar> ds1_du = table_derivative(p.stilde1, h);
  const std::vector<DualScalar> dth_du = table_derivative(p.theta, h);

  std::vector<CheckReport> out;

  // Constant dual distance between corresponding points, matching the
  // offset constant in magnitude.
  {
    std::vector<DualScalar> dist(n);
    DualScalar mean{};
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = norm(p.pos_c[i] - p.pos_c1[i], tol);
      mean = mean + dist[i];
    }
    mean = mean / DualScalar{static_cast<double>(n)};
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) t.add(dist[i] - mean);
    const DualScalar lam_abs = dual_abs(lam_b);
    t.re = std::max(t.re, std::abs(mean.re - lam_abs.re));
    t.du = std::max(t.du, std::abs(mean.du - lam_abs.du));
    // Tighter than the generic gate: distances come from positions alone.
    out.push_back(close_report("offset_distance_constancy", t, tol.tol_thm * 0.1, ns));
  }

  // lambda * tau * tau1 = kappa at corresponding points.
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      t.add(lam_b * p.frame_c[i].tau * p.frame_c1[i].tau - p.frame_c[i].kappa);
    }
    out.push_back(close_report("torsion_product_relation", t, tol.tol_thm, ns));
  }

  // Tangent rotation angle against both arc-length rates.
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar dsr = ds1_du[i] / p.frame_c[i].speed;
      const DualScalar inv = DualScalar{1.0} / dsr;
      const DualScalar ct = cos(p.theta[i]);
      const DualScalar st = sin(p.theta[i]);
      t.add(ct - dsr);
      t.add(st + lam_b * p.frame_c1[i].tau * dsr);
      t.add(ct - (DualScalar{1.0} + lam_n * p.frame_c[i].kappa) * inv);
      t.add(st - lam_n * p.frame_c[i].tau * inv);
    }
    out.push_back(close_report("angle_rate_relations", t, tol.tol_thm, ns));
  }

  // mu*tau - lambda_n*kappa = 1 with mu = lambda_n*cot(theta), checked in
  // the form cleared of the cotangent's pole: the raw quotient amplifies
  // frame noise without bound wherever theta passes through a multiple of pi.
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar ct = cos(p.theta[i]);
      const DualScalar st = sin(p.theta[i]);
      t.add(lam_n * ct * p.frame_c[i].tau -
            (lam_n * p.frame_c[i].kappa + DualScalar{1.0}) * st);
    }
    out.push_back(close_report("cotangent_linear_relation", t, tol.tol_thm, ns, false,
                               "cotangent relation scaled by sin(theta)"));
  }

  // Partner invariants from the pair's invariants and vice versa.
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      t.add(p.frame_c1[i].kappa + dth_du[i] / ds1_du[i]);
    }
    out.push_back(close_report("partner_curvature_from_angle", t, tol.tol_thm, ns));
  }
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar dsr = ds1_du[i] / p.frame_c[i].speed;
      const DualScalar ct = cos(p.theta[i]);
      const DualScalar st = sin(p.theta[i]);
      t.add(p.frame_c1[i].tau -
            sg * (st * p.frame_c[i].kappa - ct * p.frame_c[i].tau) / dsr);
    }
    out.push_back(close_report("partner_torsion_from_rotation", t, tol.tol_thm, ns));
  }
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar dsr = ds1_du[i] / p.frame_c[i].speed;
      t.add(p.frame_c[i].kappa - sg * sin(p.theta[i]) * p.frame_c1[i].tau * dsr);
    }
    out.push_back(close_report("curvature_from_partner", t, tol.tol_thm, ns));
  }
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar dsr = ds1_du[i] / p.frame_c[i].speed;
      t.add(p.frame_c[i].tau + sg * cos(p.theta[i]) * p.frame_c1[i].tau * dsr);
    }
    out.push_back(close_report("torsion_from_partner", t, tol.tol_thm, ns));
  }

  // kappa^2 + tau^2 = (ds1/ds)^2 * tau1^2; the first-power variant is kept
  // visible because it only agrees when the rate is 1.
  {
    ResidualTracker t, tp;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar dsr = ds1_du[i] / p.frame_c[i].speed;
      const DualScalar lhs = p.frame_c[i].kappa * p.frame_c[i].kappa +
                             p.frame_c[i].tau * p.frame_c[i].tau;
      const DualScalar t1sq = p.frame_c1[i].tau * p.frame_c1[i].tau;
      t.add(lhs - dsr * dsr * t1sq);
      tp.add(lhs - dsr * t1sq);
    }
    out.push_back(close_report("invariant_sum_squared_rate", t, tol.tol_thm, ns));
    out.push_back(close_report("invariant_sum_first_power", tp, tol.tol_thm, ns, true,
                               "agrees with the squared form only where ds1/ds = 1"));
  }

  // mu is not constant along a generic pair; report its spread but keep the
  // check advisory since the linear relation above is the load-bearing one.
  {
    ResidualTracker t;
    bool safe = !p.mu.empty();
    if (safe) {
      DualScalar mean{};
      for (const DualScalar& m : p.mu) mean = mean + m;
      mean = mean / DualScalar{static_cast<double>(n)};
      for (const DualScalar& m : p.mu) t.add(m - mean);
      out.push_back(close_report("mu_constancy", t, tol.tol_thm, ns, true,
                                 "advisory: varies along generic pairs"));
    } else {
      out.push_back(close_report("mu_constancy", t, tol.tol_thm, ns, true,
                                 "skipped: theta too close to a multiple of pi"));
    }
  }

  // Frame rotation: t and b expressed in the partner frame through theta.
  {
    ResidualTracker t;
    for (std::size_t i = 0; i < n; ++i) {
      const DualScalar ct = cos(p.theta[i]);
      const DualScalar st = sin(p.theta[i]);
      const DualVec3& t1v = p.frame_c1[i].t_vec.vec();
      const DualVec3& n1v = p.frame_c1[i].n_vec.vec();
      t.add(p.frame_c[i].t_vec.vec() - (t1v * ct + n1v * st));
      t.add(p.frame_c[i].b_vec.vec() - (t1v * st - n1v * ct) * sg);
    }
    out.push_back(close_report("frame_rotation", t, tol.tol_thm, ns));
  }

  // The product tau*tau1 must visibly vary, otherwise the pair sits in the
  // degenerate family where it freezes.
  {
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) {
      prod[i] = (p.frame_c[i].tau * p.frame_c1[i].tau).re;
    }
    const double spread = relative_spread(prod);
    ResidualTracker t;
    t.re = spread > kSpreadFloor ? 0.0 : kSpreadFloor - spread;
    std::ostringstream os;
    os << "relative spread " << spread << " (must exceed " << kSpreadFloor << ")";
    CheckReport rep = close_report("torsion_product_spread", t, kSpreadFloor, ns, false, os.str());
    out.push_back(rep);
  }

  return out;
}

OsculatingResult osculating_ratio(const MannheimPair& p, const Tolerances& tol) {
  const std::size_t n = p.u.size();
  if (n < 8 || p.frame_c.size() != n || p.frame_c1.size() != n || p.pos_c.size() != n ||
      p.pos_c1.size() != n) {
    raise(ErrorCode::InvalidInput, "pair is missing cached grid data");
  }
  const int ns = static_cast<int>(n);
  const DualScalar lam_b = p.lambda;
  const DualScalar lam_n = DualScalar{p.sigma} * lam_b;

  OsculatingResult res;
  res.m.resize(n);
  res.m1.resize(n);
  res.ratio.resize(n);

  ResidualTracker radius, offset_center, cross_sq, cross_printed;
  std::vector<double> ratio_re(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DualScalar inv_k = DualScalar{1.0} / p.frame_c[i].kappa;
    const DualScalar inv_k1 = DualScalar{1.0} / p.frame_c1[i].kappa;
    res.m[i] = p.pos_c[i] + p.frame_c[i].n_vec.vec() * inv_k;
    res.m1[i] = p.pos_c1[i] + p.frame_c1[i].n_vec.vec() * inv_k1;

    const DualScalar d_am = norm(res.m[i] - p.pos_c[i], tol);
    const DualScalar d_a1m = norm(res.m[i] - p.pos_c1[i], tol);
    const DualScalar d_am1 = norm(res.m1[i] - p.pos_c[i], tol);
    const DualScalar d_a1m1 = norm(res.m1[i] - p.pos_c1[i], tol);

    radius.add(d_am - dual_abs(inv_k));
    radius.add(d_a1m1 - dual_abs(inv_k1));
    offset_center.add(d_a1m - dual_abs(inv_k + lam_n));

    const DualScalar k1 = p.frame_c1[i].kappa;
    cross_sq.add(d_am1 - sqrt(DualScalar{1.0} + k1 * k1 * lam_b * lam_b) / k1);
    cross_printed.add(d_am1 - sqrt(DualScalar{1.0} + k1 * lam_b * lam_b) / k1);

    res.ratio[i] = (d_a1m / d_am) * (d_a1m1 / d_am1);
    ratio_re[i] = res.ratio[i].re;
  }

  res.ratio_rel_spread_re = relative_spread(ratio_re);
  res.is_constant = res.ratio_rel_spread_re <= tol.tol_thm;

  res.checks.push_back(close_report("osculating_radii", radius, tol.tol_thm, ns));
  res.checks.push_back(
      close_report("osculating_offset_center", offset_center, tol.tol_thm, ns));
  res.checks.push_back(
      close_report("osculating_cross_center", cross_sq, tol.tol_thm, ns));
  res.checks.push_back(close_report(
      "osculating_cross_center_variant", cross_printed, tol.tol_thm, ns, true,
      "variant with the curvature unsquared; coincides with the main form when the "
      "partner curvature is 1"));

  std::ostringstream os;
  os << "relative spread " << res.ratio_rel_spread_re << " (constant iff <= "
     << tol.tol_thm << ")";
  ResidualTracker spread_t;
  spread_t.re = res.ratio_rel_spread_re > kSpreadFloor ? 0.0
                                                       : kSpreadFloor - res.ratio_rel_spread_re;
  res.checks.push_back(
      close_report("osculating_ratio_varies", spread_t, kSpreadFloor, ns, false, os.str()));

  return res;
}

}  // namespace dualfrenet
