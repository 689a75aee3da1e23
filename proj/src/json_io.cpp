#include "ni/json_io.hpp"

#include <cmath>

namespace ni {

json sigma_to_json(double sigma) {
  if (std::isinf(sigma)) return "inf";
  return sigma;
}

double sigma_from_json(const json& j, const std::string& key) {
  if (!j.contains(key)) fail_validation("InvalidInput", "missing conductivity field: " + key);
  const json& v = j.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInf;
    fail_validation("InvalidInput", "conductivity string must be \"inf\": " + key);
  }
  if (!v.is_number()) fail_validation("InvalidInput", "conductivity must be a number: " + key);
  return v.get<double>();
}

json to_json(const ConformalMap& map) {
  json coeffs = json::array();
  for (const complexd& b : map.coeffs) coeffs.push_back({b.real(), b.imag()});
  return {{"coefficients", coeffs}};
}

ConformalMap conformal_map_from_json(const json& j) {
  if (!j.contains("coefficients") || !j.at("coefficients").is_array())
    fail_validation("InvalidInput", "conformal map needs a coefficients array");
  std::vector<complexd> coeffs;
  for (const json& c : j.at("coefficients")) {
    if (c.is_number()) {
      coeffs.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2) {
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      fail_validation("InvalidInput", "coefficients entries must be numbers or [re, im]");
    }
  }
  return ConformalMap(coeffs);
}

json to_json(const CurveSpec& spec) {
  json j;
  switch (spec.kind) {
    case CurveSpec::Kind::Conformal:
      j["kind"] = "conformal";
      j["map"] = to_json(spec.map);
      j["dilation"] = spec.dilation;
      break;
    case CurveSpec::Kind::PerturbedDisk: {
      j["kind"] = "perturbed_disk";
      j["r"] = spec.r_i;
      json h;
      h["a0"] = spec.h.a0;
      h["cos"] = spec.h.cos_c;
      h["sin"] = spec.h.sin_c;
      j["h"] = h;
      break;
    }
    case CurveSpec::Kind::Ellipse:
      j["kind"] = "ellipse";
      j["a"] = spec.a;
      j["b"] = spec.b;
      j["center"] = {spec.center[0], spec.center[1]};
      break;
    case CurveSpec::Kind::Circle:
      j["kind"] = "circle";
      j["r"] = spec.r;
      j["center"] = {spec.center[0], spec.center[1]};
      break;
    case CurveSpec::Kind::NeumannOval:
      j["kind"] = "neumann_oval";
      j["alpha"] = spec.alpha;
      j["eps"] = spec.eps;
      break;
  }
  return j;
}

CurveSpec curve_spec_from_json(const json& j) {
  if (!j.contains("kind")) fail_validation("InvalidInput", "curve spec needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "conformal") {
    ConformalMap map = conformal_map_from_json(j.contains("map") ? j.at("map") : j);
    double dil = j.value("dilation", 1.0);
    return CurveSpec::conformal(map, dil);
  }
  if (kind == "perturbed_disk") {
    TrigPoly h;
    if (j.contains("h")) {
      const json& hj = j.at("h");
      h.a0 = hj.value("a0", 0.0);
      if (hj.contains("cos")) h.cos_c = hj.at("cos").get<std::vector<double>>();
      if (hj.contains("sin")) h.sin_c = hj.at("sin").get<std::vector<double>>();
    }
    return CurveSpec::perturbed_disk(j.value("r", 1.0), h);
  }
  if (kind == "ellipse") {
    Eigen::Vector2d center(0.0, 0.0);
    if (j.contains("center"))
      center = {j.at("center")[0].get<double>(), j.at("center")[1].get<double>()};
    return CurveSpec::ellipse(j.value("a", 1.0), j.value("b", 1.0), center);
  }
  if (kind == "circle") {
    Eigen::Vector2d center(0.0, 0.0);
    if (j.contains("center"))
      center = {j.at("center")[0].get<double>(), j.at("center")[1].get<double>()};
    return CurveSpec::circle(j.value("r", 1.0), center);
  }
  if (kind == "neumann_oval") {
    return CurveSpec::neumann_oval(j.value("alpha", 1.0), j.value("eps", 0.0));
  }
  fail_validation("InvalidInput", "unknown curve kind: " + kind);
}

json to_json(const ConductivityProfile& profile) {
  json j;
  j["sigma_c"] = sigma_to_json(profile.sigma_c);
  j["sigma_s"] = profile.sigma_s;
  if (profile.matrix_isotropic()) {
    j["sigma_m"] = profile.sigma_m[0];
  } else {
    j["sigma_m"] = profile.sigma_m;
  }
  j["d"] = profile.d;
  return j;
}

ConductivityProfile profile_from_json(const json& j, int d) {
  ConductivityProfile p;
  p.d = j.value("d", d);
  p.sigma_c = sigma_from_json(j, "sigma_c");
  p.sigma_s = j.value("sigma_s", 1.0);
  if (j.contains("sigma_m")) {
    const json& m = j.at("sigma_m");
    if (m.is_array()) {
      for (size_t i = 0; i < m.size() && i < 3; ++i) p.sigma_m[i] = m[i].get<double>();
      for (size_t i = m.size(); i < 3; ++i) p.sigma_m[i] = p.sigma_m[0];
    } else {
      double v = m.get<double>();
      p.sigma_m = {v, v, v};
    }
  }
  return p;
}

json to_json(const PolarizationTensor& pt) {
  json j;
  j["m"] = {{pt.m(0, 0), pt.m(0, 1)}, {pt.m(1, 0), pt.m(1, 1)}};
  j["d"] = pt.d;
  j["area_core"] = pt.area_core;
  j["area_shell"] = pt.area_shell;
  j["contrast"] = sigma_to_json(pt.contrast);
  if (!pt.flag.empty()) j["flag"] = pt.flag;
  return j;
}

json to_json(const HsReport& report) {
  return {{"upper_slack", report.upper_slack},
          {"lower_slack", report.lower_slack},
          {"attains_lower", report.attains_lower}};
}

json to_json(const BondingParameter& beta) {
  json j;
  j["A"] = beta.A;
  j["B"] = beta.B;
  j["A_printed"] = beta.A_printed;
  j["b_abs"] = beta.b_abs;
  j["rotation"] = beta.rotation;
  j["min_beta"] = beta.min_sample();
  j["is_weakly_neutral"] = beta.is_weakly_neutral;
  j["samples"] = beta.samples;
  return j;
}

json to_json(const LcDiskSolution& sol) { return {{"c", sol.c}, {"d", sol.d}}; }

json to_json(const CoatingSearchResult& result) {
  json trace = json::array();
  for (const auto& e : result.trace)
    trace.push_back({{"iter", e.iter}, {"m_norm", e.m_norm}, {"b", e.b}});
  return {{"b", result.b},           {"iterations", result.iterations},
          {"m_norm", result.m_norm}, {"r_e", result.r_e},
          {"area_shell", result.area_shell}, {"trace", trace}};
}

json to_json(const ConfocalConductivityResult& result) {
  return {{"sigma_m", result.sigma_m}, {"beta", result.beta_j},
          {"alpha", result.alpha},     {"gamma", result.gamma},
          {"f", result.f},             {"trace_residual", result.trace_residual}};
}

json to_json(const OdpResidualReport& report) {
  return {{"laplacian_residual", report.laplacian_residual},
          {"outer_grad_max", report.outer_grad_max},
          {"inner_affine_residual", report.inner_affine_residual}};
}

json to_json(const NewtonianFormulationReport& report) {
  return {{"outside_max", report.outside_max},
          {"fit_residual", report.fit_residual},
          {"fitted_alpha", report.fitted_alpha},
          {"linear_term_norm", report.linear_term_norm}};
}

json to_json(const QuadratureReport& report) {
  json j;
  j["identity"] = report.identity;
  j["residual"] = report.residual;
  if (report.residual_printed >= 0.0) j["residual_printed"] = report.residual_printed;
  j["degree"] = report.degree;
  if (!report.foci.empty()) j["foci"] = report.foci;
  j["per_degree"] = report.per_degree;
  return j;
}

json to_json(const SpectralExteriorSolution& sol) {
  json c = json::array();
  for (const complexd& v : sol.c) c.push_back({v.real(), v.imag()});
  return {{"n_modes", sol.n_modes},
          {"c", c},
          {"lambda_core", sol.lambda_core},
          {"alpha1", {sol.alpha1.real(), sol.alpha1.imag()}},
          {"flux_residual", sol.flux_residual},
          {"tail_ratio", sol.tail_ratio},
          {"condition", sol.condition}};
}

json to_json(const DecayResult& result) {
  return {{"p", result.p},
          {"below_noise", result.below_noise},
          {"delta1", result.delta1},
          {"delta2", result.delta2}};
}

} // namespace ni
