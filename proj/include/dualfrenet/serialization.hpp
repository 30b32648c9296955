#pragma once

// JSON bindings for the library's value types plus file helpers. Malformed
// or unreadable input surfaces as InvalidInput, never as a library-foreign
// exception type.

#include <string>

#include "json.hpp"

#include "dualfrenet/dual_curve.hpp"
#include "dualfrenet/frenet_synthesis.hpp"
#include "dualfrenet/line_geometry.hpp"
#include "dualfrenet/mannheim.hpp"
#include "dualfrenet/ruled_surface.hpp"

namespace dualfrenet {

using Json = nlohmann::ordered_json;

Json dual_scalar_to_json(const DualScalar& x);
DualScalar dual_scalar_from_json(const Json& j);

Json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);

Json dual_vec3_to_json(const DualVec3& v);
DualVec3 dual_vec3_from_json(const Json& j);

Json line_to_json(const Line3& line);
Line3 line_from_json(const Json& j);

// Curve definitions: either {"real": <expr>, "dual": <expr>, "domain": [a,b]}
// with catalog/sample expressions, or {"hermite": <tables>} carrying node
// tables of positions and the first three derivatives.
DualCurve curve_from_json(const Json& j);

// Resamples any curve into the hermite form above; n_nodes >= 4.
Json curve_to_sampled_json(const DualCurve& c, int n_nodes);

Json hermite_tables_to_json(const HermiteTables& tables);
std::shared_ptr<HermiteTables> hermite_tables_from_json(const Json& j);

// Scalar profile expressions: {"kind":"const","re":..,"du":..},
// {"kind":"tan"}, {"kind":"poly","re_coeffs":[..],"du_coeffs":[..]}.
ScalarProfile scalar_profile_from_json(const Json& j);

// Input for pair generation.
struct GenerateConfig {
  DualScalar lambda;
  ScalarProfile tau1;
  double s_min = 0.0;
  double s_max = 1.0;
  double step = 1e-3;
  int samples = 256;
};
GenerateConfig generate_config_from_json(const Json& j);

Json report_to_json(const CheckReport& r);

Json patch_to_json(const RuledSurfacePatch& patch);
RuledSurfacePatch patch_from_json(const Json& j);

Json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& content);

}  // namespace dualfrenet
