#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"

#include "dualfrenet/serialization.hpp"
#include "test_support.hpp"

using namespace dualfrenet;

namespace {

// Runs fn and reports the GeomError message it raised, if any.
template <typename Fn>
std::optional<std::string> geom_message(Fn&& fn) {
  try {
    fn();
  } catch (const GeomError& e) {
    return std::string{e.what()};
  }
  return std::nullopt;
}

bool contains(const std::optional<std::string>& msg, const char* needle) {
  return msg.has_value() && msg->find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("scalar and vector values survive a JSON round trip unchanged") {
  const DualScalar x{2.0, -3.5};
  const Json jx = dual_scalar_to_json(x);
  CHECK(jx.at("re").get<double>() == 2.0);
  CHECK(jx.at("du").get<double>() == -3.5);
  const DualScalar x2 = dual_scalar_from_json(jx);
  CHECK(x2.re == x.re);
  CHECK(x2.du == x.du);

  const Vec3 v{0.1, -0.2, 0.3};
  const Json jv = vec3_to_json(v);
  REQUIRE(jv.is_array());
  REQUIRE(jv.size() == 3);
  const Vec3 v2 = vec3_from_json(jv);
  CHECK(v2.x == v.x);
  CHECK(v2.y == v.y);
  CHECK(v2.z == v.z);

  const DualVec3 w{{1, 2, 3}, {4, 5, 6}};
  const DualVec3 w2 = dual_vec3_from_json(dual_vec3_to_json(w));
  CHECK(w2.re.x == w.re.x);
  CHECK(w2.du.z == w.du.z);

  const Line3 line{{1, 2, 0}, {0, 0, 1}};
  const Line3 line2 = line_from_json(line_to_json(line));
  CHECK(line2.point.y == 2.0);
  CHECK(line2.direction.z == 1.0);

  CHECK(geom_code([] { return vec3_from_json(Json::parse("[1, 2]")); }) ==
        ErrorCode::InvalidInput);
  CHECK(geom_code([] { return vec3_from_json(Json::parse("[1, 2, 3, 4]")); }) ==
        ErrorCode::InvalidInput);
  CHECK(geom_code([] { return vec3_from_json(Json::parse("{\"x\": 1}")); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("curve expressions parse to the same curves the factories build") {
  const Json j = Json::parse(R"({
    "real": {"kind": "helix", "radius": 3, "pitch": 4},
    "dual": {"kind": "scaled", "factor": 0.1,
             "of": {"kind": "helix", "radius": 3, "pitch": 4}},
    "domain": [0, 5]
  })");
  const DualCurve parsed = curve_from_json(j);
  const DualCurve built = make_dual_curve(0.0, 5.0, helix_part(3.0, 4.0),
                                          scaled_part(0.1, helix_part(3.0, 4.0)));
  CHECK(parsed.t_begin() == built.t_begin());
  CHECK(parsed.t_end() == built.t_end());
  for (const double t : {0.3, 2.7, 4.9}) {
    const DualVec3 a = parsed.position(t), b = built.position(t);
    CHECK(a.re.x == b.re.x);
    CHECK(a.re.y == b.re.y);
    CHECK(a.du.z == b.du.z);
    const DualVec3 da = parsed.derivative(2, t), db = built.derivative(2, t);
    CHECK(da.re.x == db.re.x);
    CHECK(da.du.y == db.du.y);
  }

  const DualCurve circle = curve_from_json(Json::parse(
      R"({"real": {"kind": "circle", "radius": 2}, "domain": [0, 6]})"));
  CHECK(circle.position(1.0).re.x == 2.0 * std::cos(1.0));
  CHECK(circle.position(1.0).du.x == 0.0);  // missing dual part means zero

  const DualCurve line = curve_from_json(Json::parse(
      R"({"real": {"kind": "line", "point": [1, 2, 0], "direction": [0, 1, 0]},
          "domain": [0, 3]})"));
  CHECK(line.position(2.0).re.y == 4.0);

  const DualCurve poly = curve_from_json(Json::parse(
      R"({"real": {"kind": "polynomial", "coeffs": [[1, 2, 3], [0, 1], [5]]},
          "domain": [0, 1]})"));
  const DualCurve poly_built = make_dual_curve(
      0.0, 1.0, polynomial_part({std::vector<double>{1, 2, 3}, {0, 1}, {5}}), zero_part());
  CHECK(poly.position(0.7).re.x == poly_built.position(0.7).re.x);

  const Json samples = Json::parse(
      R"({"real": {"kind": "samples",
                   "t": [0, 1, 2, 3, 4],
                   "points": [[0,0,0],[1,1,0],[2,4,0],[3,9,0],[4,16,0]]},
          "domain": [0, 4]})");
  const DualCurve spline = curve_from_json(samples);
  const DualCurve spline_built = make_dual_curve(
      0.0, 4.0,
      sampled_part({0, 1, 2, 3, 4}, {{0, 0, 0}, {1, 1, 0}, {2, 4, 0}, {3, 9, 0}, {4, 16, 0}}),
      zero_part());
  CHECK(spline.position(1.6).re.y == spline_built.position(1.6).re.y);

  const DualCurve zero = curve_from_json(Json::parse(
      R"({"real": {"kind": "zero"}, "dual": {"kind": "zero"}, "domain": [0, 1]})"));
  CHECK(zero.position(0.5).re.x == 0.0);

  CHECK(geom_code([] {
          return curve_from_json(Json::parse(
              R"({"real": {"kind": "moebius"}, "domain": [0, 1]})"));
        }) == ErrorCode::InvalidInput);
  CHECK(geom_code([] {
          return curve_from_json(Json::parse(R"({"real": {"kind": "zero"}})"));
        }) == ErrorCode::InvalidInput);
}

TEST_CASE("resampling a curve to node tables keeps it evaluable") {
  const DualCurve c = make_dual_curve(0.0, 5.0, helix_part(3.0, 4.0),
                                      scaled_part(0.1, helix_part(3.0, 4.0)));
  const Json j = curve_to_sampled_json(c, 64);
  REQUIRE(j.contains("hermite"));
  const DualCurve back = curve_from_json(j);
  CHECK(back.t_begin() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(back.t_end() == doctest::Approx(5.0).epsilon(1e-15));

  // Exact at the 64 uniform nodes, interpolated in between.
  for (const int i : {0, 17, 40, 63}) {
    const double t = 5.0 * i / 63.0;
    CHECK(norm(back.position(t).re - c.position(t).re) <= 1e-13);
    CHECK(norm(back.position(t).du - c.position(t).du) <= 1e-13);
  }
  for (const double t : {0.21, 2.83, 4.4}) {
    CHECK(norm(back.position(t).re - c.position(t).re) <= 1e-5);
    CHECK(norm(back.position(t).du - c.position(t).du) <= 1e-5);
  }

  CHECK(geom_code([&] { return curve_to_sampled_json(c, 3); }) == ErrorCode::InvalidInput);
}

TEST_CASE("hermite node tables round trip bitwise") {
  HermiteTables tables;
  for (int i = 0; i <= 4; ++i) {
    const double t = 0.3 * i;
    tables.nodes.push_back(t);
    tables.p.push_back({{t, t * t, 0.1 * t}, {0.5 * t, 0, 0}});
    tables.d1.push_back({{1, 2 * t, 0.1}, {0.5, 0, 0}});
    tables.d2.push_back({{0, 2, 0}, {0, 0, 0}});
    tables.d3.push_back({{0, 0, 0}, {0, 0, 0}});
  }
  const std::shared_ptr<HermiteTables> back =
      hermite_tables_from_json(hermite_tables_to_json(tables));
  REQUIRE(back->nodes.size() == tables.nodes.size());
  for (std::size_t i = 0; i < tables.nodes.size(); ++i) {
    CHECK(back->nodes[i] == tables.nodes[i]);
    CHECK(back->p[i].re.y == tables.p[i].re.y);
    CHECK(back->p[i].du.x == tables.p[i].du.x);
    CHECK(back->d1[i].re.y == tables.d1[i].re.y);
    CHECK(back->d2[i].re.y == tables.d2[i].re.y);
  }
  CHECK(back->d4.empty());
}

TEST_CASE("profile expressions parse each catalog kind") {
  const ScalarProfile c = scalar_profile_from_json(
      Json::parse(R"({"kind": "const", "re": 2, "du": 0.5})"));
  CHECK(c.f(1.3).re == 2.0);
  CHECK(c.f(1.3).du == 0.5);

  const ScalarProfile t = scalar_profile_from_json(Json::parse(R"({"kind": "tan"})"));
  CHECK(t.f(0.4).re == doctest::Approx(std::tan(0.4)).epsilon(1e-15));

  const ScalarProfile p = scalar_profile_from_json(
      Json::parse(R"({"kind": "poly", "re_coeffs": [1, 2], "du_coeffs": [0.5]})"));
  CHECK(p.f(2.0).re == 5.0);
  CHECK(p.f(2.0).du == 0.5);

  CHECK(geom_code([] {
          return scalar_profile_from_json(Json::parse(R"({"kind": "sinh"})"));
        }) == ErrorCode::InvalidInput);
}

TEST_CASE("generation configs supply defaults for optional keys") {
  const GenerateConfig full = generate_config_from_json(Json::parse(R"({
    "lambda": {"re": 1, "du": 0.25},
    "tau1": {"kind": "tan"},
    "s_range": [-1, 1],
    "step": 0.002,
    "samples": 128
  })"));
  CHECK(full.lambda.re == 1.0);
  CHECK(full.lambda.du == 0.25);
  CHECK(full.s_min == -1.0);
  CHECK(full.s_max == 1.0);
  CHECK(full.step == 0.002);
  CHECK(full.samples == 128);
  CHECK(full.tau1.f(0.3).re == doctest::Approx(std::tan(0.3)).epsilon(1e-15));

  const GenerateConfig defaults = generate_config_from_json(Json::parse(R"({
    "lambda": {"re": 1, "du": 0},
    "tau1": {"kind": "tan"},
    "s_range": [0, 1]
  })"));
  CHECK(defaults.step == 1e-3);
  CHECK(defaults.samples == 256);

  CHECK(geom_code([] {
          return generate_config_from_json(
              Json::parse(R"({"tau1": {"kind": "tan"}, "s_range": [0, 1]})"));
        }) == ErrorCode::InvalidInput);
  CHECK(geom_code([] {
          return generate_config_from_json(
              Json::parse(R"({"lambda": {"re": 1, "du": 0}, "tau1": {"kind": "tan"}})"));
        }) == ErrorCode::InvalidInput);
}

TEST_CASE("check reports serialize with a fixed key layout") {
  CheckReport r;
  r.name = "example";
  r.max_abs_residual_re = 1e-9;
  r.max_abs_residual_du = 2e-9;
  r.tolerance = 1e-6;
  r.pass = true;
  r.samples = 64;
  r.flagged = false;
  r.note = "checked";

  const Json j = report_to_json(r);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  const std::vector<std::string> expected{"name",      "max_residual_re",
                                          "max_residual_du", "tolerance",
                                          "pass",      "samples",
                                          "flagged",   "note"};
  CHECK(keys == expected);
  CHECK(j.at("name").get<std::string>() == "example");
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("samples").get<int>() == 64);
}

TEST_CASE("ruled patches round trip including the degenerate flag") {
  RuledSurfacePatch patch;
  patch.s_grid = {0.0, 0.5, 1.0};
  patch.base_points = {{0, 0, 0}, {0, 0, 0.5}, {0, 0, 1}};
  patch.rulings = {{1, 0, 0}, {0, 1, 0}, {1, 0, 0}};
  patch.u_min = -2.0;
  patch.u_max = 3.0;
  patch.degenerate = true;

  const Json j = patch_to_json(patch);
  CHECK(j.contains("s_grid"));
  CHECK(j.contains("base_points"));
  CHECK(j.contains("rulings"));
  CHECK(j.contains("u_range"));
  CHECK(j.contains("degenerate"));

  const RuledSurfacePatch back = patch_from_json(j);
  REQUIRE(back.s_grid.size() == 3);
  CHECK(back.s_grid[1] == 0.5);
  CHECK(back.base_points[2].z == 1.0);
  CHECK(back.rulings[1].y == 1.0);
  CHECK(back.u_min == -2.0);
  CHECK(back.u_max == 3.0);
  CHECK(back.degenerate);
}

TEST_CASE("file helpers surface io problems as input errors") {
  const std::string path = "/tmp/dualfrenet_serialization_test.json";
  save_text(path, R"({"a": 1})");
  const Json j = load_json(path);
  CHECK(j.at("a").get<int>() == 1);
  std::remove(path.c_str());

  CHECK(contains(geom_message([] { load_json("/tmp/no_such_dir_ser_test/missing.json"); }),
                 "cannot open"));

  save_text(path, "{ not json");
  CHECK(contains(geom_message([&] { load_json(path); }), "cannot parse"));
  std::remove(path.c_str());

  CHECK(contains(geom_message([] {
                   save_text("/tmp/no_such_dir_ser_test/out.txt", "x");
                 }),
                 "cannot write"));
}
