#include "ni/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ni/json_io.hpp"

namespace ni::cli {

namespace {

json load_input(const std::string& path) {
  if (path.empty()) fail_validation("InvalidInput", "an --input file is required");
  std::ifstream in(path);
  if (!in) fail_validation("InvalidInput", "cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail_validation("InvalidInput", std::string("input is not valid JSON: ") + e.what());
  }
  return j;
}

void emit(const json& j, const std::string& path) {
  std::string text = j.dump(2);
  text += '\n';
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_validation("InvalidInput", "cannot open output file: " + path);
    out << text;
  }
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_validation("InvalidInput", "cannot open output file: " + path);
  out << text;
}

int node_count(const json& cfg) { return cfg.value("nodes", 512); }

BoundaryCurve curve_from(const json& cfg, const std::string& key, int nodes) {
  if (!cfg.contains(key)) fail_validation("InvalidInput", "missing curve spec: " + key);
  return build_curve(curve_spec_from_json(cfg.at(key)), nodes);
}

Eigen::Vector2d background_from(const json& cfg) {
  Eigen::Vector2d a(1.0, 0.0);
  if (cfg.contains("a")) {
    const json& ja = cfg.at("a");
    if (!ja.is_array() || ja.size() != 2)
      fail_validation("InvalidInput", "a must be a 2-vector");
    a = {ja[0].get<double>(), ja[1].get<double>()};
  }
  return a;
}

BondingParameter beta_from(const json& cfg, const ConformalMap& map, int nodes) {
  if (cfg.contains("beta")) {
    const json& jb = cfg.at("beta");
    if (jb.is_number()) return bonding_constant(map, jb.get<double>(), nodes);
    if (jb.is_object() && jb.contains("constant"))
      return bonding_constant(map, jb.at("constant").get<double>(), nodes);
  }
  return beta_weakly_neutral(map, nodes);
}

FieldSolution field_from_config(const json& cfg) {
  std::string type = cfg.value("type", "simple");
  int nodes = node_count(cfg);
  Eigen::Vector2d a = background_from(cfg);
  if (type == "simple") {
    BoundaryCurve curve = curve_from(cfg, "curve", nodes);
    double k = sigma_from_json(cfg, "k");
    return exterior_field_simple(curve, k, a);
  }
  if (type == "coreshell") {
    BoundaryCurve core = curve_from(cfg, "core", nodes);
    BoundaryCurve shell = curve_from(cfg, "shell", nodes);
    if (!cfg.contains("profile")) fail_validation("InvalidInput", "missing profile");
    ConductivityProfile profile = profile_from_json(cfg.at("profile"));
    return exterior_field_coreshell(core, shell, profile, a);
  }
  if (type == "imperfect") {
    if (!cfg.contains("map")) fail_validation("InvalidInput", "missing map");
    ConformalMap map = conformal_map_from_json(cfg.at("map"));
    int modes = cfg.value("modes", 64);
    BondingParameter beta = beta_from(cfg, map, 16 * modes);
    return exterior_field_imperfect(map, beta, a, modes);
  }
  fail_validation("InvalidInput", "field type must be simple, coreshell or imperfect");
}

int cmd_pt(const json& cfg, const std::string& out_path) {
  int nodes = node_count(cfg);
  json out;
  if (cfg.contains("core") || cfg.contains("shell")) {
    BoundaryCurve core = curve_from(cfg, "core", nodes);
    BoundaryCurve shell = curve_from(cfg, "shell", nodes);
    if (!cfg.contains("profile")) fail_validation("InvalidInput", "missing profile");
    ConductivityProfile profile = profile_from_json(cfg.at("profile"));
    out["pt"] = to_json(pt_coreshell(core, shell, profile));
  } else {
    BoundaryCurve curve = curve_from(cfg, "curve", nodes);
    double k = sigma_from_json(cfg, "k");
    out["pt"] = to_json(pt_simple(curve, k));
  }
  emit(out, out_path);
  return 0;
}

int cmd_hs(const json& cfg, const std::string& out_path) {
  int nodes = node_count(cfg);
  BoundaryCurve curve = curve_from(cfg, "curve", nodes);
  double k = sigma_from_json(cfg, "k");
  PolarizationTensor pt = pt_simple(curve, k);
  json out;
  out["pt"] = to_json(pt);
  out["hs"] = to_json(hs_check(pt, k, curve.area()));
  emit(out, out_path);
  return 0;
}

int cmd_coat(const json& cfg, const std::string& out_path) {
  if (!cfg.contains("map")) fail_validation("InvalidInput", "missing map");
  ConformalMap map = conformal_map_from_json(cfg.at("map"));
  double sigma_s = cfg.value("sigma_s", 0.5);
  int nodes = node_count(cfg);
  CoatingResult coat = construct_coating_bD0(map, sigma_s, nodes);
  PolarizationTensor pt = pt_coreshell(coat.core, coat.shell, coat.profile);
  double area_shell = coat.shell.area();
  double m_norm = pt.m.norm();
  json out;
  out["r"] = coat.r;
  out["sigma_s"] = coat.sigma_s;
  out["sigma_m"] = coat.sigma_m;
  out["area_shell"] = area_shell;
  out["pt"] = to_json(pt);
  out["m_norm"] = m_norm;
  out["neutral"] = m_norm <= 1e-6 * area_shell;
  emit(out, out_path);
  return 0;
}

int cmd_beta(const json& cfg, const std::string& out_path) {
  if (!cfg.contains("map")) fail_validation("InvalidInput", "missing map");
  ConformalMap map = conformal_map_from_json(cfg.at("map"));
  int nodes = node_count(cfg);
  BondingParameter beta = beta_from(cfg, map, nodes);
  emit(to_json(beta), out_path);
  return 0;
}

int cmd_lc_disk(const json& cfg, const std::string& out_path) {
  double r = cfg.value("r", 1.0);
  double sigma_c = sigma_from_json(cfg, "sigma_c");
  double sigma_m = cfg.value("sigma_m", 1.0);
  double beta = cfg.value("beta", 1.0);
  LcDiskSolution sol = solve_lc_disk(r, sigma_c, sigma_m, beta);
  json out = to_json(sol);
  out["neutral"] = std::abs(sol.d) <= 1e-12;
  emit(out, out_path);
  return 0;
}

int cmd_field(const json& cfg, const std::string& out_path, const std::string& grid_path) {
  FieldSolution sol = field_from_config(cfg);
  json out;
  out["provenance"] = sol.provenance;
  out["a"] = {sol.a[0], sol.a[1]};
  out["circumradius"] = sol.circumradius();
  if (sol.provenance == "imperfect") out["spectral"] = to_json(sol.spectral);
  if (cfg.contains("points")) {
    std::vector<Eigen::Vector2d> pts;
    for (const json& p : cfg.at("points")) pts.push_back({p[0].get<double>(), p[1].get<double>()});
    std::vector<double> vals = field_values(sol, pts);
    json jv = json::array(), jp = json::array();
    for (size_t i = 0; i < pts.size(); ++i) {
      jv.push_back(vals[i]);
      jp.push_back(vals[i] - sol.a.dot(pts[i]));
    }
    out["u"] = jv;
    out["pert"] = jp;
  }
  if (!grid_path.empty()) {
    std::array<double, 4> bbox;
    int resolution = 128;
    if (cfg.contains("grid")) {
      const json& jg = cfg.at("grid");
      if (jg.contains("bbox")) {
        for (int i = 0; i < 4; ++i) bbox[i] = jg.at("bbox")[i].get<double>();
      } else {
        double R = 3.0 * sol.circumradius();
        bbox = {-R, R, -R, R};
      }
      resolution = jg.value("resolution", 128);
    } else {
      double R = 3.0 * sol.circumradius();
      bbox = {-R, R, -R, R};
    }
    FieldGrid grid = grid_sample(sol, bbox, resolution);
    write_text(grid_to_csv(grid), grid_path);
    out["grid_csv"] = grid_path;
  }
  emit(out, out_path);
  return 0;
}

int cmd_decay(const json& cfg, const std::string& out_path) {
  FieldSolution sol = field_from_config(cfg);
  double rc = sol.circumradius();
  double R1 = cfg.value("R1", 2.5 * rc);
  double R2 = cfg.value("R2", 5.0 * rc);
  int m = cfg.value("directions", 32);
  DecayResult res = decay_exponent(sol, R1, R2, m);
  json out = to_json(res);
  out["R1"] = R1;
  out["R2"] = R2;
  out["circumradius"] = rc;
  emit(out, out_path);
  return 0;
}

int cmd_odp(const json& cfg, const std::string& out_path) {
  OdpSolution sol;
  if (cfg.contains("balls")) {
    const json& jb = cfg.at("balls");
    sol = odp_balls(jb.value("r_i", 1.0), jb.value("r_e", 2.0));
  } else {
    if (!cfg.contains("c2")) fail_validation("InvalidInput", "need c2/rho0 or balls");
    std::array<double, 3> c2;
    for (int i = 0; i < 3; ++i) c2[i] = cfg.at("c2")[i].get<double>();
    EllipsoidPair pair{c2, cfg.value("rho0", 1.0)};
    sol = odp_confocal(pair);
  }
  sol.corruption_x1sq = cfg.value("corruption_x1sq", 0.0);
  int n_samples = cfg.value("n_samples", 200);
  unsigned seed = cfg.value("seed", 7u);
  OdpResidualReport rep = odp_residual(sol, n_samples, seed);
  Eigen::Matrix3d A = sol.A();
  json out = to_json(rep);
  out["A_diag"] = {A(0, 0), A(1, 1), A(2, 2)};
  out["scale"] = sol.scale();
  emit(out, out_path);
  return 0;
}

int cmd_quad(const json& cfg, const std::string& out_path) {
  std::string identity = cfg.value("identity", "");
  int degree = cfg.value("degree", 6);
  json out;
  if (identity == "focal_ellipse") {
    std::vector<double> a = cfg.at("a").get<std::vector<double>>();
    out = to_json(focal_ellipse_identity(a, degree));
  } else if (identity == "neumann_oval") {
    out = to_json(neumann_oval_identity(cfg.value("alpha", 1.0), cfg.value("eps", 0.5), degree));
  } else if (identity == "mean_value_2d") {
    int nodes = node_count(cfg);
    BoundaryCurve D = curve_from(cfg, "D", nodes);
    BoundaryCurve Omega = curve_from(cfg, "Omega", nodes);
    out = to_json(mean_value_identity_2d(D, Omega, degree));
  } else if (identity == "mean_value_3d") {
    std::array<double, 3> ac, as;
    for (int i = 0; i < 3; ++i) {
      ac[i] = cfg.at("a_core")[i].get<double>();
      as[i] = cfg.at("a_shell")[i].get<double>();
    }
    out = to_json(mean_value_identity_3d(ac, as, degree));
  } else if (identity == "newtonian_formulation") {
    std::array<double, 3> c2;
    for (int i = 0; i < 3; ++i) c2[i] = cfg.at("c2")[i].get<double>();
    NewtonianFormulationReport rep = check_newtonian_formulation(
        c2, cfg.value("rho0", 1.0), cfg.value("n_out", 64), cfg.value("n_in", 64),
        cfg.value("shell_axis_scale_x", 1.0), cfg.value("seed", 11u));
    out = to_json(rep);
    out["identity"] = "newtonian_formulation";
  } else {
    fail_validation("InvalidInput",
                    "identity must be one of focal_ellipse, neumann_oval, mean_value_2d, "
                    "mean_value_3d, newtonian_formulation");
  }
  emit(out, out_path);
  return 0;
}

int cmd_newton_coat(const json& cfg, const std::string& out_path) {
  TrigPoly h;
  if (cfg.contains("h")) {
    const json& jh = cfg.at("h");
    h.a0 = jh.value("a0", 0.0);
    if (jh.contains("cos")) h.cos_c = jh.at("cos").get<std::vector<double>>();
    if (jh.contains("sin")) h.sin_c = jh.at("sin").get<std::vector<double>>();
  }
  double sigma_c = sigma_from_json(cfg, "sigma_c");
  double sigma_s = cfg.value("sigma_s", 2.0);
  double sigma_m = cfg.value("sigma_m", 1.0);
  double r_i = cfg.value("r_i", 1.0);
  CoatingSearchOptions opts;
  opts.tol = cfg.value("tol", 1e-8);
  opts.max_iter = cfg.value("max_iter", 25);
  opts.nodes = cfg.value("nodes", 256);
  CoatingSearchResult res = find_coating_perturbed_disk(h, sigma_c, sigma_s, sigma_m, r_i, opts);
  emit(to_json(res), out_path);
  return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Neutral inclusion toolkit: polarization tensors, coatings, quadrature domains"};
  app.require_subcommand(1);

  std::string input, output, grid;
  struct Sub {
    CLI::App* app = nullptr;
    std::string input, output, grid;
  };
  std::map<std::string, Sub> subs;
  for (const char* name : {"pt", "coat", "beta", "lc-disk", "field", "decay", "odp", "quad",
                           "hs", "newton-coat"}) {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name);
    s.app->add_option("--input", s.input, "problem spec (JSON)");
    s.app->add_option("--output", s.output, "result path (JSON; stdout if omitted)");
    if (std::string(name) == "field")
      s.app->add_option("--grid", s.grid, "grid CSV output path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (auto& [name, s] : subs) {
      if (!s.app->parsed()) continue;
      json cfg = load_input(s.input);
      if (name == "pt") return cmd_pt(cfg, s.output);
      if (name == "hs") return cmd_hs(cfg, s.output);
      if (name == "coat") return cmd_coat(cfg, s.output);
      if (name == "beta") return cmd_beta(cfg, s.output);
      if (name == "lc-disk") return cmd_lc_disk(cfg, s.output);
      if (name == "field") return cmd_field(cfg, s.output, s.grid);
      if (name == "decay") return cmd_decay(cfg, s.output);
      if (name == "odp") return cmd_odp(cfg, s.output);
      if (name == "quad") return cmd_quad(cfg, s.output);
      if (name == "newton-coat") return cmd_newton_coat(cfg, s.output);
    }
    fail_validation("InvalidInput", "no subcommand given");
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "validation error: InvalidInput: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace ni::cli
