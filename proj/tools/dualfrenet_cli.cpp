// Command-line front end: curve analysis, partner-pair generation and
// verification, line/dual-sphere conversions, ruled-surface export, and the
// built-in acceptance suite.
//
// Exit codes: 0 success, 1 a geometric operation refused its input, 2 the
// input itself was malformed (bad JSON, bad flags).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dualfrenet/acceptance.hpp"
#include "dualfrenet/dual_curve.hpp"
#include "dualfrenet/errors.hpp"
#include "dualfrenet/line_geometry.hpp"
#include "dualfrenet/mannheim.hpp"
#include "dualfrenet/ruled_surface.hpp"
#include "dualfrenet/serialization.hpp"
#include "dualfrenet/tolerances.hpp"

using namespace dualfrenet;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Empty path means stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  save_text(path, content);
}

void append_vec(std::ostringstream& os, const Vec3& v) {
  os << ',' << fmt(v.x) << ',' << fmt(v.y) << ',' << fmt(v.z);
}

int run_frenet(const std::string& input, const std::string& output, int samples,
               const Tolerances& tol) {
  const DualCurve c = curve_from_json(load_json(input));
  const int n = samples > 0 ? samples : 128;
  if (n < 2) raise(ErrorCode::InvalidInput, "frenet needs at least 2 samples");
  std::ostringstream csv;
  csv << "t,s,s_du";
  for (const char* f : {"tangent", "normal", "binormal"})
    for (const char* slot : {"re", "du"})
      for (const char* axis : {"x", "y", "z"}) csv << ',' << f << '_' << slot << '_' << axis;
  csv << ",kappa_re,kappa_du,tau_re,tau_du\n";

  const double t0 = c.t_begin(), t1 = c.t_end();
  DualScalar s{0.0, 0.0};
  double prev = t0;
  for (int i = 0; i < n; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
    if (i > 0) s = s + dual_arc_length(c, prev, t, tol);
    prev = t;
    const FrenetData f = frenet(c, t, tol);
    csv << fmt(t) << ',' << fmt(s.re) << ',' << fmt(s.du);
    for (const UnitDualVec3* v : {&f.t_vec, &f.n_vec, &f.b_vec}) {
      append_vec(csv, v->re());
      append_vec(csv, v->du());
    }
    csv << ',' << fmt(f.kappa.re) << ',' << fmt(f.kappa.du) << ',' << fmt(f.tau.re) << ','
        << fmt(f.tau.du) << '\n';
  }
  emit(output, csv.str());
  return 0;
}

int run_classify(const std::string& input, const std::string& output, const Tolerances& tol) {
  const DualCurve c = curve_from_json(load_json(input));
  Json out;
  const StraightLineResult sl = classify_straight_line(c, tol);
  Json jsl;
  jsl["is_line"] = sl.is_line;
  jsl["max_kappa_re"] = sl.max_kappa_re;
  jsl["max_kappa_du"] = sl.max_kappa_du;
  jsl["fit_residual_re"] = sl.fit_residual_re;
  jsl["fit_residual_du"] = sl.fit_residual_du;
  if (sl.direction) jsl["direction"] = dual_vec3_to_json(sl.direction->vec());
  if (sl.through) jsl["through"] = dual_vec3_to_json(*sl.through);
  out["straight_line"] = jsl;

  if (sl.is_line) {
    out["planar"] = Json{{"skipped", "curvature vanishes: a straight line has no unique plane"}};
  } else {
    const PlanarResult pl = classify_planar(c, tol);
    Json jpl;
    jpl["is_planar"] = pl.is_planar;
    jpl["max_tau_re"] = pl.max_tau_re;
    jpl["max_tau_du"] = pl.max_tau_du;
    jpl["max_plane_re"] = pl.max_plane_re;
    jpl["max_plane_du"] = pl.max_plane_du;
    if (pl.normal) jpl["normal"] = dual_vec3_to_json(pl.normal->vec());
    out["planar"] = jpl;
  }
  emit(output, out.dump(2) + "\n");
  return 0;
}

int run_generate(const std::string& input, const std::string& output, double step_flag,
                 int samples_flag, const Tolerances& tol) {
  GenerateConfig cfg = generate_config_from_json(load_json(input));
  if (step_flag > 0.0) cfg.step = step_flag;
  if (samples_flag > 0) cfg.samples = samples_flag;
  const MannheimPair p =
      generate_pair(cfg.lambda, cfg.tau1, cfg.s_min, cfg.s_max, cfg.step, tol, cfg.samples);
  const PairCheckResult pc = pair_check(p.c, p.c1, tol, cfg.samples);

  const std::string base = output.empty() ? "pair" : output;
  // Tables at the synthesis density: the offset curve's normal direction is
  // ill-conditioned where its curvature dips toward zero, and coarser
  // resampling would not survive its own pair gate.
  const double span = p.c.t_end() - p.c.t_begin();
  const int nodes = std::max(cfg.samples, static_cast<int>(std::ceil(span / cfg.step))) + 1;
  save_text(base + ".c.json", curve_to_sampled_json(p.c, nodes).dump(2) + "\n");
  save_text(base + ".c1.json", curve_to_sampled_json(p.c1, nodes).dump(2) + "\n");

  const DualScalar lam = pc.pair ? pc.pair->lambda : p.lambda;
  Json meta;
  meta["lambda"] = dual_scalar_to_json(lam);
  meta["sigma"] = pc.pair ? pc.pair->sigma : p.sigma;
  meta["samples"] = cfg.samples;
  meta["report"] = report_to_json(pc.report);
  meta["curves"] = Json{{"mannheim", std::filesystem::path(base + ".c.json").filename().string()},
                        {"partner", std::filesystem::path(base + ".c1.json").filename().string()}};
  save_text(base + ".pair.json", meta.dump(2) + "\n");
  std::cout << "wrote " << base << ".c.json, " << base << ".c1.json, " << base << ".pair.json\n";
  return 0;
}

int run_verify(const std::string& input, const std::string& output, int samples_flag,
               const Tolerances& tol) {
  const Json meta = load_json(input);
  if (!meta.contains("curves"))
    raise(ErrorCode::InvalidInput, "verify input must be a .pair.json bundle with a curves block");
  const std::filesystem::path dir = std::filesystem::path(input).parent_path();
  const std::string f_c = (dir / meta["curves"]["mannheim"].get<std::string>()).string();
  const std::string f_c1 = (dir / meta["curves"]["partner"].get<std::string>()).string();
  const DualCurve c = curve_from_json(load_json(f_c));
  const DualCurve c1 = curve_from_json(load_json(f_c1));
  const int n = samples_flag > 0 ? samples_flag : meta.value("samples", 256);

  const PairCheckResult pc = pair_check(c, c1, tol, n);
  Json out;
  Json pair;
  pair["valid"] = pc.pair.has_value() && pc.report.pass;
  pair["samples"] = n;
  if (pc.pair) {
    pair["lambda"] = dual_scalar_to_json(pc.pair->lambda);
    pair["sigma"] = pc.pair->sigma;
  }
  out["pair"] = pair;
  Json checks = Json::array();
  checks.push_back(report_to_json(pc.report));
  if (pc.pair) {
    for (const CheckReport& r : verify_pair_identities(*pc.pair, tol)) checks.push_back(report_to_json(r));
    const OsculatingResult osc = osculating_ratio(*pc.pair, tol);
    for (const CheckReport& r : osc.checks) checks.push_back(report_to_json(r));
  }
  out["checks"] = checks;
  emit(output, out.dump(2) + "\n");
  return 0;
}

int run_study(const std::string& input, const std::string& output, const Tolerances& tol) {
  const Json j = load_json(input);
  Json out;
  if (j.contains("point") && j.contains("direction")) {
    const UnitDualVec3 v = line_to_dual(line_from_json(j), tol);
    out = dual_vec3_to_json(v.vec());
  } else if (j.contains("re") && j.contains("du")) {
    out = line_to_json(dual_to_line(dual_vec3_from_json(j), tol));
  } else if (j.contains("a") && j.contains("b")) {
    auto as_unit = [&tol](const Json& e) {
      if (e.contains("point")) return line_to_dual(line_from_json(e), tol);
      return normalize(dual_vec3_from_json(e), tol);
    };
    const UnitDualVec3 va = as_unit(j["a"]), vb = as_unit(j["b"]);
    out["angle"] = dual_scalar_to_json(dual_angle(va, vb, tol));
    if (j["a"].contains("point") && j["b"].contains("point")) {
      const LinePairGeometry g = line_pair_geometry(line_from_json(j["a"]), line_from_json(j["b"]), tol);
      out["line_pair"] =
          Json{{"angle", g.angle}, {"distance", g.distance}, {"parallel", g.parallel}};
    }
    emit(output, out.dump(2) + "\n");
    return 0;
  } else {
    raise(ErrorCode::InvalidInput,
          "study input needs point/direction (line), re/du (dual vector), or a/b (a pair)");
  }
  emit(output, out.dump(2) + "\n");
  return 0;
}

int run_ruled(const std::string& input, const std::string& output, int samples,
              const std::vector<double>& u_range, int u_samples, const Tolerances& tol) {
  const DualCurve c = curve_from_json(load_json(input));
  const int n = samples > 0 ? samples : 100;
  if (n < 2) raise(ErrorCode::InvalidInput, "ruled-export needs at least 2 samples");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] =
        c.t_begin() + (c.t_end() - c.t_begin()) * static_cast<double>(i) / (n - 1);
  const RuledSurfacePatch patch = dual_curve_to_ruled(c, grid, u_range[0], u_range[1]);
  if (patch.degenerate)
    std::cerr << "warning: all rulings coincide, exporting a zero-area mesh\n";
  emit(output, export_mesh(patch, u_samples));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-number line geometry: frames, partner curves, ruled surfaces"};
  app.require_subcommand(1);

  std::string input, output;
  double tol_thm = -1.0, tol_pair = -1.0, step = -1.0;
  int samples = -1, u_samples = 20;
  std::vector<double> u_range{-1.0, 1.0};
  bool parallel = false;
  std::uint64_t seed = 42;

  app.add_option("--input,-i", input, "input JSON file");
  app.add_option("--output,-o", output, "output file (stdout when omitted)");
  app.add_option("--tol-thm", tol_thm, "override the identity-check residual bound");
  app.add_option("--tol-pair", tol_pair, "override the pair-gate residual bound");
  app.add_option("--step", step, "override the integration step");
  app.add_option("--samples,-n", samples, "sample count for grids and checks");
  app.add_option("--u-range", u_range, "ruling parameter range")->expected(2);
  app.add_option("--u-samples", u_samples, "vertices per ruling in mesh export");
  app.add_flag("--parallel", parallel, "run independent sweeps on all cores");
  app.add_option("--seed", seed, "seed for randomized sweeps");

  CLI::App* cmd_frenet = app.add_subcommand("frenet", "frame and invariants along a curve, as CSV");
  CLI::App* cmd_classify = app.add_subcommand("classify", "straight-line / planar classification");
  CLI::App* cmd_generate =
      app.add_subcommand("mannheim-generate", "synthesize a partner pair bundle from a config");
  CLI::App* cmd_verify =
      app.add_subcommand("mannheim-verify", "re-check every pair identity on a bundle");
  CLI::App* cmd_study =
      app.add_subcommand("study", "convert lines to/from dual vectors, or measure a pair");
  CLI::App* cmd_ruled = app.add_subcommand("ruled-export", "sample a dual curve into an OBJ mesh");
  CLI::App* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");
  for (CLI::App* sub : {cmd_frenet, cmd_classify, cmd_generate, cmd_verify, cmd_study, cmd_ruled,
                        cmd_selftest})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  double tol_scale = 1.0;
  if (const char* env = std::getenv("DUALFRENET_TOL_SCALE")) {
    char* end = nullptr;
    tol_scale = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol_scale > 0.0)) {
      std::cerr << "DUALFRENET_TOL_SCALE must be a positive number, got '" << env << "'\n";
      return 2;
    }
  }
  Tolerances tol = default_tolerances().scaled(tol_scale);
  if (tol_thm > 0.0) tol.tol_thm = tol_thm;
  if (tol_pair > 0.0) tol.tol_pair = tol_pair;

  try {
    if (*cmd_frenet) return run_frenet(input, output, samples, tol);
    if (*cmd_classify) return run_classify(input, output, tol);
    if (*cmd_generate) return run_generate(input, output, step, samples, tol);
    if (*cmd_verify) return run_verify(input, output, samples, tol);
    if (*cmd_study) return run_study(input, output, tol);
    if (*cmd_ruled) return run_ruled(input, output, samples, u_range, u_samples, tol);
    if (*cmd_selftest) return run_acceptance(seed, parallel, tol_scale, std::cout) ? 0 : 1;
  } catch (const GeomError& e) {
    std::cerr << e.what() << '\n'; // already "<ErrorName>: detail"
    return e.code() == ErrorCode::InvalidInput ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
