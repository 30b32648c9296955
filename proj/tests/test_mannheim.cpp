#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"

#include "dualfrenet/mannheim.hpp"
#include "test_support.hpp"

using namespace dualfrenet;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Arc-length views of the stock curves used across the cases.
const DualCurve& helix_arc() {
  static const DualCurve c =
      reparameterize_by_arclength(
          make_dual_curve(0.0, 4.0 * kPi, helix_part(3.0, 4.0), zero_part()))
          .curve;
  return c;
}

DualCurve circle_arc(double radius) {
  return reparameterize_by_arclength(
             make_dual_curve(0.0, 2.0 * kPi, circle_part(radius), zero_part()))
      .curve;
}

const DualCurve& line_a() {
  static const DualCurve c = make_dual_curve(0.0, 3.0, line_part({0, 0, 0}, {1, 0, 0}),
                                             line_part({0, 1, 0}, {0, 0, 0}));
  return c;
}

// Pair with a purely real offset constant: every dual slot stays zero.
const MannheimPair& real_pair() {
  static const MannheimPair p =
      generate_pair({1.0, 0.0}, tan_profile(), -0.8, 0.8, 2e-3, default_tolerances(), 64);
  return p;
}

// Pair with a dual offset constant: the dual slots carry the derivative of
// every quantity in the offset direction.
const MannheimPair& lifted_pair() {
  static const MannheimPair p =
      generate_pair({1.0, 0.25}, tan_profile(), -1.0, 1.0, 1e-3, default_tolerances(), 256);
  return p;
}

}  // namespace

TEST_CASE("offsetting a curve along its normal needs a real offset constant") {
  CHECK(geom_code([] { return partner_from_mannheim(helix_arc(), {0.0, 0.3}); }) ==
        ErrorCode::PureDualLambda);
  CHECK(geom_code([] { return mannheim_from_partner(helix_arc(), {0.0, 0.3}); }) ==
        ErrorCode::PureDualLambda);
  CHECK(geom_code([] { return check_mannheim_condition(helix_arc(), {0.0, 0.3}); }) ==
        ErrorCode::PureDualLambda);
  CHECK(geom_code([] { return check_partner_ode(helix_arc(), {0.0, 0.3}); }) ==
        ErrorCode::PureDualLambda);
}

TEST_CASE("normal offset of a circle by its radius collapses to the center") {
  CHECK(geom_code([] { return partner_from_mannheim(circle_arc(2.0), {-2.0, 0.0}); }) ==
        ErrorCode::DegeneratePartner);
}

TEST_CASE("a helix satisfies the offset condition yet has no partner curve") {
  // kappa = lambda*(kappa^2 + tau^2) holds on the helix with lambda = R.
  const CheckReport cond = check_mannheim_condition(helix_arc(), {3.0, 0.0});
  CHECK(cond.name == "mannheim_condition");
  CHECK(cond.pass);
  CHECK(cond.max_abs_residual_re <= 1e-12);
  CHECK(cond.max_abs_residual_du <= 1e-12);

  const CheckReport wrong = check_mannheim_condition(helix_arc(), {1.0, 0.0});
  CHECK(!wrong.pass);
  CHECK(wrong.max_abs_residual_re == doctest::Approx(0.08).epsilon(1e-3));

  // The normal offset by lambda is a coaxial helix with the scaled invariants
  // of radius 6 and pitch slope 4 ...
  const DualCurve q = partner_from_mannheim(helix_arc(), {3.0, 0.0});
  const DualVec3 start = q.position(q.t_begin());
  CHECK(norm(start.re - Vec3{6.0, 0.0, 0.0}) <= 1e-8);
  const FrenetData f = frenet(q, 5.0);
  CHECK(f.kappa.re == doctest::Approx(6.0 / 52.0).epsilon(1e-9));
  CHECK(f.tau.re == doctest::Approx(4.0 / 52.0).epsilon(1e-9));

  // ... but the normals of the base helix are exactly perpendicular to the
  // offset's binormals, so the pair gate rejects with residual one.  The
  // only partner line field of a helix is its axis, which is not a curve
  // frame: the construction alone never certifies a pair.
  const PairCheckResult r = pair_check(helix_arc(), q);
  CHECK(!r.report.pass);
  CHECK(!r.pair.has_value());
  CHECK(r.report.max_abs_residual_re == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.report.max_abs_residual_du == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("the partner torsion slope equation holds only on true partners") {
  // A unit circle has constant torsion, so the slope residual is exactly the
  // curvature term kappa/lambda = 1.
  const CheckReport flat = check_partner_ode(circle_arc(1.0), {1.0, 0.0});
  CHECK(flat.name == "partner_torsion_slope");
  CHECK(!flat.pass);
  CHECK(flat.max_abs_residual_re == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(flat.max_abs_residual_du == doctest::Approx(0.0).epsilon(1e-9));

  const MannheimPair& p = lifted_pair();
  const CheckReport ode = check_partner_ode(p.c1, p.lambda, default_tolerances(), 1024);
  CHECK(ode.pass);
  CHECK(ode.max_abs_residual_re <= 5e-8);
  CHECK(ode.max_abs_residual_du <= 1e-9);
  CHECK(ode.samples == 1024);

  CHECK(geom_code([] { return check_partner_ode(circle_arc(1.0), {1.0, 0.0},
                                                default_tolerances(), 4); }) ==
        ErrorCode::InvalidInput);
  CHECK(geom_code([] { return check_mannheim_condition(helix_arc(), {3.0, 0.0},
                                                       default_tolerances(), 1); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("the pair gate accepts a generated pair and records its geometry") {
  const MannheimPair& p = lifted_pair();
  const PairCheckResult r = pair_check(p.c, p.c1);

  CHECK(r.report.name == "pair_normal_binormal");
  CHECK(r.report.pass);
  CHECK(r.report.samples == 256);
  CHECK(r.report.note.find("sigma -1") != std::string::npos);
  REQUIRE(r.pair.has_value());
  CHECK(r.pair->sigma == -1.0);
  CHECK(r.pair->lambda.re == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.pair->lambda.du == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("the pair gate rejects curves whose line fields never align") {
  const PairCheckResult r = pair_check(circle_arc(2.0), circle_arc(4.0));
  CHECK(!r.report.pass);
  CHECK(!r.report.flagged);
  CHECK(!r.pair.has_value());
  // Coplanar circles: the normal lies in the plane, the binormal is the
  // plane normal, so the alignment residual saturates at one.
  CHECK(r.report.max_abs_residual_re == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.report.max_abs_residual_du == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("the pair gate flags correspondences without a defined frame") {
  const DualCurve line_b = make_dual_curve(0.0, 3.0, line_part({0, 2, 0}, {1, 0, 0}),
                                           line_part({0, 0, 0}, {0, 0, 0}));
  const PairCheckResult r = pair_check(line_a(), line_b, default_tolerances(), 32);
  CHECK(!r.report.pass);
  CHECK(r.report.flagged);
  CHECK(!r.pair.has_value());
  CHECK(r.report.note ==
        "frame undefined on one curve (vanishing curvature), so the "
        "normal/binormal coincidence is ambiguous here");
}

TEST_CASE("the pair gate raises when no foot-point correspondence exists") {
  CHECK(geom_code([] { return pair_check(line_a(), helix_arc()); }) ==
        ErrorCode::NoCorrespondence);
}

TEST_CASE("a generated real pair reproduces its closed forms") {
  const MannheimPair& p = real_pair();
  REQUIRE(p.u1.size() == 64);
  REQUIRE(p.theta.size() == 64);
  CHECK(p.sigma == -1.0);
  CHECK(p.lambda.re == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(p.lambda.du) <= 1e-9);

  // With a tangent torsion profile and unit offset the partner curvature is
  // identically one, the rotation angle is the negated profile parameter,
  // and the partner arc length runs from zero at the window start.
  double gap_k1 = 0.0, gap_t1 = 0.0, gap_th = 0.0, gap_st = 0.0, gap_du = 0.0;
  for (std::size_t i = 0; i < p.u1.size(); ++i) {
    const double s1 = p.u1[i];
    gap_k1 = std::max(gap_k1, std::abs(p.frame_c1[i].kappa.re - 1.0));
    gap_t1 = std::max(gap_t1, std::abs(p.frame_c1[i].tau.re - std::tan(s1)));
    gap_th = std::max(gap_th, std::abs(p.theta[i].re + s1));
    gap_st = std::max(gap_st, std::abs(p.stilde1[i].re - (s1 + 0.8)));
    gap_st = std::max(gap_st, std::abs(p.stilde1[i].du));
    gap_du = std::max({gap_du, std::abs(p.frame_c1[i].kappa.du),
                       std::abs(p.frame_c1[i].tau.du), std::abs(p.theta[i].du)});
  }
  CHECK(gap_k1 <= 1e-9);
  CHECK(gap_t1 <= 1e-6);
  CHECK(gap_th <= 1e-9);
  CHECK(gap_st <= 1e-10);
  CHECK(gap_du <= 1e-12);
}

TEST_CASE("a generated dual pair reproduces its closed forms in both slots") {
  const MannheimPair& p = lifted_pair();
  REQUIRE(p.u1.size() == 256);
  CHECK(p.sigma == -1.0);
  CHECK(p.lambda.re == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(p.lambda.du == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(p.mu.size() == 256);

  // Closed forms in the profile parameter s1, offset constant 1 + 0.25 eps:
  //   kappa1 = 1 + 0.25 cos(2 s1) eps        theta = -s1 - 0.25 sin s1 cos s1 eps
  //   kappa  = sin^2 s1 (1 + 0.25 cos(2 s1) eps)
  //   tau    = sin s1 cos s1 - 0.5 sin^3 s1 cos s1 eps
  double g_k1re = 0.0, g_k1du = 0.0, g_t1re = 0.0, g_thre = 0.0, g_thdu = 0.0;
  double g_kre = 0.0, g_kdu = 0.0, g_tre = 0.0, g_tdu = 0.0, g_st = 0.0;
  for (std::size_t i = 0; i < p.u1.size(); ++i) {
    const double s1 = p.u1[i];
    const double sn = std::sin(s1), cs = std::cos(s1);
    g_k1re = std::max(g_k1re, std::abs(p.frame_c1[i].kappa.re - 1.0));
    g_k1du = std::max(g_k1du, std::abs(p.frame_c1[i].kappa.du - 0.25 * std::cos(2.0 * s1)));
    g_t1re = std::max(g_t1re, std::abs(p.frame_c1[i].tau.re - std::tan(s1)));
    g_thre = std::max(g_thre, std::abs(p.theta[i].re + s1));
    g_thdu = std::max(g_thdu, std::abs(p.theta[i].du + 0.25 * sn * cs));
    g_kre = std::max(g_kre, std::abs(p.frame_c[i].kappa.re - sn * sn));
    g_kdu = std::max(g_kdu,
                     std::abs(p.frame_c[i].kappa.du - 0.25 * sn * sn * std::cos(2.0 * s1)));
    g_tre = std::max(g_tre, std::abs(p.frame_c[i].tau.re - sn * cs));
    g_tdu = std::max(g_tdu, std::abs(p.frame_c[i].tau.du + 0.5 * sn * sn * sn * cs));
    g_st = std::max(g_st, std::abs(p.stilde1[i].re - (s1 + 1.0)));
    g_st = std::max(g_st, std::abs(p.stilde1[i].du));
  }
  CHECK(g_k1re <= 1e-9);
  CHECK(g_k1du <= 1e-10);
  CHECK(g_t1re <= 1e-5);
  CHECK(g_thre <= 1e-9);
  CHECK(g_thdu <= 1e-10);
  CHECK(g_kre <= 1e-9);
  CHECK(g_kdu <= 1e-10);
  CHECK(g_tre <= 1e-5);
  CHECK(g_tdu <= 1e-8);
  CHECK(g_st <= 1e-9);
}

TEST_CASE("every pairwise relation holds on a generated pair") {
  const std::vector<CheckReport> reports = verify_pair_identities(lifted_pair());
  const std::vector<std::string> expected{
      "offset_distance_constancy",   "torsion_product_relation",
      "angle_rate_relations",        "cotangent_linear_relation",
      "partner_curvature_from_angle", "partner_torsion_from_rotation",
      "curvature_from_partner",      "torsion_from_partner",
      "invariant_sum_squared_rate",  "invariant_sum_first_power",
      "mu_constancy",                "frame_rotation",
      "torsion_product_spread"};
  REQUIRE(reports.size() == expected.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].name == expected[i]);
    if (!reports[i].flagged) {
      INFO(reports[i].name, " residual ", reports[i].max_abs_residual_re);
      CHECK(reports[i].pass);
    }
  }

  // Exactly two observations are flagged: the first-power variant of the
  // invariant-sum identity and the constancy of mu, which a varying theta
  // rules out.  Both fail by orders of magnitude rather than marginally.
  for (const CheckReport& r : reports) {
    const bool should_flag =
        r.name == "invariant_sum_first_power" || r.name == "mu_constancy";
    CHECK(r.flagged == should_flag);
    if (r.name == "invariant_sum_first_power") {
      CHECK(!r.pass);
      CHECK(r.max_abs_residual_re > 0.1);
    }
    if (r.name == "mu_constancy") {
      CHECK(!r.pass);
      CHECK(r.max_abs_residual_re > 100.0);
    }
    if (r.name == "torsion_product_spread") {
      CHECK(r.note.find("relative spread") != std::string::npos);
    }
    if (r.name == "cotangent_linear_relation") {
      CHECK(r.note.find("scaled by sin(theta)") != std::string::npos);
    }
  }
}

TEST_CASE("osculating-circle centers give a varying cross ratio") {
  const OsculatingResult r = osculating_ratio(lifted_pair());
  REQUIRE(r.checks.size() == 5);
  CHECK(r.checks[0].name == "osculating_radii");
  CHECK(r.checks[1].name == "osculating_offset_center");
  CHECK(r.checks[2].name == "osculating_cross_center");
  CHECK(r.checks[3].name == "osculating_cross_center_variant");
  CHECK(r.checks[4].name == "osculating_ratio_varies");
  CHECK(r.checks[0].pass);
  CHECK(r.checks[1].pass);
  CHECK(r.checks[2].pass);
  CHECK(!r.checks[3].pass);
  CHECK(r.checks[3].flagged);
  CHECK(r.checks[4].pass);

  CHECK(r.m.size() == 256);
  CHECK(r.m1.size() == 256);
  CHECK(r.ratio.size() == 256);
  CHECK(!r.is_constant);
  CHECK(r.ratio_rel_spread_re > 0.5);
}

TEST_CASE("offset constructions are inverse to each other on a true pair") {
  const MannheimPair& p = lifted_pair();

  // Rebuilding the offset curve from the partner reproduces it exactly.
  const DualCurve m = mannheim_from_partner(p.c1, p.lambda);
  CHECK(m.t_end() == doctest::Approx(p.c.t_end()).epsilon(1e-6));
  const double len = std::min(m.t_end(), p.c.t_end());
  for (const double f : {0.0, 0.3, 0.7, 1.0}) {
    const DualVec3 a = m.position(f * len);
    const DualVec3 b = p.c.position(f * len);
    CHECK(norm(a.re - b.re) <= 1e-9);
    CHECK(norm(a.du - b.du) <= 1e-9);
  }
  // The rebuilt curve carries finite-difference frames whose accuracy drops
  // right at the domain edges; 64 midpoint samples keep the gate grid clear
  // of that boundary layer.
  const PairCheckResult r = pair_check(m, p.c1, default_tolerances(), 64);
  CHECK(r.report.pass);
  REQUIRE(r.pair.has_value());
  CHECK(r.pair->lambda.re == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.pair->lambda.du == doctest::Approx(0.25).epsilon(1e-5));

  // Rebuilding the partner from the offset curve needs the opposite sign:
  // the offset sits at c1 + lambda*b1, so c - lambda*n recovers c1 only with
  // -lambda (the gate fixes sigma = -1 here).  The rebuilt curve starts its
  // arc parameter at zero while c1 starts at the profile window.
  const DualCurve q = partner_from_mannheim(p.c, {-p.lambda.re, -p.lambda.du});
  CHECK(q.t_begin() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q.t_end() == doctest::Approx(2.0).epsilon(1e-5));
  for (const double s : {0.1, 1.0, 1.9}) {
    const DualVec3 a = q.position(s);
    const DualVec3 b = p.c1.position(-1.0 + s);
    CHECK(norm(a.re - b.re) <= 1e-6);
    CHECK(norm(a.du - b.du) <= 1e-6);
  }
}

TEST_CASE("relative spread measures variation against the mean") {
  CHECK(relative_spread({1.0, 2.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(relative_spread({4.0, 4.0, 4.0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(geom_code([] { return relative_spread({}); }) == ErrorCode::InvalidInput);
}
