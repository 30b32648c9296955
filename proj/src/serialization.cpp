#include "dualfrenet/serialization.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dualfrenet/errors.hpp"

namespace dualfrenet {

namespace {

// Translates any json exception into the library's own failure mode so
// callers see one error surface for all malformed input.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    raise(ErrorCode::InvalidInput, std::string(what) + ": " + e.what());
  }
}

std::vector<double> doubles_from_json(const Json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

std::vector<Vec3> vec3s_from_json(const Json& j) {
  std::vector<Vec3> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(vec3_from_json(v));
  return out;
}

Json vec3s_to_json(const std::vector<Vec3>& v) {
  Json j = Json::array();
  for (const Vec3& x : v) j.push_back(vec3_to_json(x));
  return j;
}

std::vector<DualVec3> dual_vec3s_from_json(const Json& j) {
  std::vector<DualVec3> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(dual_vec3_from_json(v));
  return out;
}

Json dual_vec3s_to_json(const std::vector<DualVec3>& v) {
  Json j = Json::array();
  for (const DualVec3& x : v) j.push_back(dual_vec3_to_json(x));
  return j;
}

CurvePart part_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "helix") {
    return helix_part(j.at("radius").get<double>(), j.at("pitch").get<double>());
  }
  if (kind == "circle") {
    return circle_part(j.at("radius").get<double>());
  }
  if (kind == "line") {
    return line_part(vec3_from_json(j.at("point")), vec3_from_json(j.at("direction")));
  }
  if (kind == "polynomial") {
    const Json& c = j.at("coeffs");
    if (c.size() != 3) {
      raise(ErrorCode::InvalidInput, "polynomial coeffs must hold 3 component arrays");
    }
    std::array<std::vector<double>, 3> coeffs;
    for (int k = 0; k < 3; ++k) coeffs[k] = doubles_from_json(c.at(k));
    return polynomial_part(coeffs);
  }
  if (kind == "scaled") {
    return scaled_part(j.at("factor").get<double>(), part_from_json(j.at("of")));
  }
  if (kind == "samples") {
    return sampled_part(doubles_from_json(j.at("t")), vec3s_from_json(j.at("points")));
  }
  if (kind == "zero") {
    return zero_part();
  }
  raise(ErrorCode::InvalidInput, "unknown curve expression kind '" + kind + "'");
}

}  // namespace

Json dual_scalar_to_json(const DualScalar& x) { return Json{{"re", x.re}, {"du", x.du}}; }

DualScalar dual_scalar_from_json(const Json& j) {
  return guarded("dual scalar", [&] {
    return DualScalar{j.at("re").get<double>(), j.at("du").get<double>()};
  });
}

Json vec3_to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const Json& j) {
  return guarded("3-vector", [&] {
    if (j.size() != 3) {
      raise(ErrorCode::InvalidInput, "3-vector must have exactly 3 entries");
    }
    return Vec3{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
  });
}

Json dual_vec3_to_json(const DualVec3& v) {
  return Json{{"re", vec3_to_json(v.re)}, {"du", vec3_to_json(v.du)}};
}

DualVec3 dual_vec3_from_json(const Json& j) {
  return guarded("dual vector", [&] {
    return DualVec3{vec3_from_json(j.at("re")), vec3_from_json(j.at("du"))};
  });
}

Json line_to_json(const Line3& line) {
  return Json{{"point", vec3_to_json(line.point)},
              {"direction", vec3_to_json(line.direction)}};
}

Line3 line_from_json(const Json& j) {
  return guarded("line", [&] {
    return Line3{vec3_from_json(j.at("point")), vec3_from_json(j.at("direction"))};
  });
}

DualCurve curve_from_json(const Json& j) {
  return guarded("curve", [&] {
    if (j.contains("hermite")) {
      return hermite_sampled_curve(hermite_tables_from_json(j.at("hermite")));
    }
    const Json& dom = j.at("domain");
    if (dom.size() != 2) {
      raise(ErrorCode::InvalidInput, "curve domain must be [t0, t1]");
    }
    const CurvePart re = part_from_json(j.at("real"));
    const CurvePart du = j.contains("dual") ? part_from_json(j.at("dual")) : zero_part();
    return make_dual_curve(dom.at(0).get<double>(), dom.at(1).get<double>(), re, du);
  });
}

Json curve_to_sampled_json(const DualCurve& c, int n_nodes) {
  if (n_nodes < 4) {
    raise(ErrorCode::InvalidInput, "resampling needs at least 4 nodes");
  }
  HermiteTables tables;
  const double t0 = c.t_begin();
  const double t1 = c.t_end();
  for (int i = 0; i < n_nodes; ++i) {
    const double t = t0 + (t1 - t0) * i / (n_nodes - 1);
    tables.nodes.push_back(t);
    tables.p.push_back(c.position(t));
    tables.d1.push_back(c.derivative(1, t));
    tables.d2.push_back(c.derivative(2, t));
    tables.d3.push_back(c.derivative(3, t));
  }
  return Json{{"hermite", hermite_tables_to_json(tables)}};
}

Json hermite_tables_to_json(const HermiteTables& tables) {
  Json j{{"nodes", tables.nodes},
         {"p", dual_vec3s_to_json(tables.p)},
         {"d1", dual_vec3s_to_json(tables.d1)},
         {"d2", dual_vec3s_to_json(tables.d2)},
         {"d3", dual_vec3s_to_json(tables.d3)}};
  if (!tables.d4.empty()) {
    j["d4"] = dual_vec3s_to_json(tables.d4);
  }
  return j;
}

std::shared_ptr<HermiteTables> hermite_tables_from_json(const Json& j) {
  return guarded("hermite tables", [&] {
    auto tables = std::make_shared<HermiteTables>();
    tables->nodes = doubles_from_json(j.at("nodes"));
    tables->p = dual_vec3s_from_json(j.at("p"));
    tables->d1 = dual_vec3s_from_json(j.at("d1"));
    tables->d2 = dual_vec3s_from_json(j.at("d2"));
    tables->d3 = dual_vec3s_from_json(j.at("d3"));
    if (j.contains("d4")) {
      tables->d4 = dual_vec3s_from_json(j.at("d4"));
    }
    return tables;
  });
}

ScalarProfile scalar_profile_from_json(const Json& j) {
  return guarded("scalar profile", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "const") {
      return const_profile(
          DualScalar{j.at("re").get<double>(), j.at("du").get<double>()});
    }
    if (kind == "tan") {
      return tan_profile();
    }
    if (kind == "poly") {
      return poly_profile(doubles_from_json(j.at("re_coeffs")),
                          doubles_from_json(j.at("du_coeffs")));
    }
    raise(ErrorCode::InvalidInput, "unknown profile kind '" + kind + "'");
  });
}

GenerateConfig generate_config_from_json(const Json& j) {
  return guarded("generate config", [&] {
    GenerateConfig cfg;
    cfg.lambda = dual_scalar_from_json(j.at("lambda"));
    cfg.tau1 = scalar_profile_from_json(j.at("tau1"));
    const Json& range = j.at("s_range");
    if (range.size() != 2) {
      raise(ErrorCode::InvalidInput, "s_range must be [a, b]");
    }
    cfg.s_min = range.at(0).get<double>();
    cfg.s_max = range.at(1).get<double>();
    if (j.contains("step")) cfg.step = j.at("step").get<double>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    return cfg;
  });
}

Json report_to_json(const CheckReport& r) {
  return Json{{"name", r.name},
              {"max_residual_re", r.max_abs_residual_re},
              {"max_residual_du", r.max_abs_residual_du},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"samples", r.samples},
              {"flagged", r.flagged},
              {"note", r.note}};
}

Json patch_to_json(const RuledSurfacePatch& patch) {
  return Json{{"s_grid", patch.s_grid},
              {"base_points", vec3s_to_json(patch.base_points)},
              {"rulings", vec3s_to_json(patch.rulings)},
              {"u_range", Json::array({patch.u_min, patch.u_max})},
              {"degenerate", patch.degenerate}};
}

RuledSurfacePatch patch_from_json(const Json& j) {
  return guarded("ruled patch", [&] {
    RuledSurfacePatch patch;
    patch.s_grid = doubles_from_json(j.at("s_grid"));
    patch.base_points = vec3s_from_json(j.at("base_points"));
    patch.rulings = vec3s_from_json(j.at("rulings"));
    const Json& range = j.at("u_range");
    if (range.size() != 2) {
      raise(ErrorCode::InvalidInput, "u_range must be [a, b]");
    }
    patch.u_min = range.at(0).get<double>();
    patch.u_max = range.at(1).get<double>();
    if (j.contains("degenerate")) patch.degenerate = j.at("degenerate").get<bool>();
    return patch;
  });
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    raise(ErrorCode::InvalidInput, "cannot parse '" + path + "': " + e.what());
  }
}

void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  }
  out << content;
  if (!out) {
    raise(ErrorCode::InvalidInput, "write failed for '" + path + "'");
  }
}

}  // namespace dualfrenet
