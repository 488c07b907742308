#include "helix/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace helix {

namespace {

using nlohmann::json;

json to_json(const RunConfig& cfg) {
  json j;
  j["surface"] = {{"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c},
                  {"d", cfg.d}, {"m", cfg.m}};
  j["ell"] = cfg.ell;
  j["energy"] = cfg.energy;
  j["beta"] = cfg.beta;
  j["r0"] = cfg.r0;
  j["phi0"] = cfg.phi0;
  j["lambda_end"] = cfg.lambda_end;
  j["mesh"] = {{"n_chi", cfg.mesh.n_chi},
               {"n_phi", cfg.mesh.n_phi},
               {"revolutions", cfg.mesh.revolutions}};
  j["sweep"] = {{"beta_min", cfg.sweep.beta_min},
                {"beta_max", cfg.sweep.beta_max},
                {"count", cfg.sweep.count},
                {"fix", cfg.sweep.fix_ell ? "ell" : "energy"}};
  j["samples"] = cfg.samples;
  j["phi_span"] = cfg.phi_span;
  j["tolerances"] = {{"rel", cfg.rel_tol}, {"abs", cfg.abs_tol}};
  j["max_events"] = cfg.max_events;
  j["out"] = cfg.out;
  return j;
}

RunConfig from_json(const json& j) {
  RunConfig cfg;
  auto get = [](const json& node, const char* key, auto& into) {
    if (node.contains(key)) node.at(key).get_to(into);
  };
  if (j.contains("surface")) {
    const json& s = j.at("surface");
    get(s, "a", cfg.a);
    get(s, "b", cfg.b);
    get(s, "c", cfg.c);
    get(s, "d", cfg.d);
    get(s, "m", cfg.m);
  }
  get(j, "ell", cfg.ell);
  get(j, "energy", cfg.energy);
  get(j, "beta", cfg.beta);
  get(j, "r0", cfg.r0);
  get(j, "phi0", cfg.phi0);
  get(j, "lambda_end", cfg.lambda_end);
  if (j.contains("mesh")) {
    const json& m = j.at("mesh");
    get(m, "n_chi", cfg.mesh.n_chi);
    get(m, "n_phi", cfg.mesh.n_phi);
    get(m, "revolutions", cfg.mesh.revolutions);
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    get(s, "beta_min", cfg.sweep.beta_min);
    get(s, "beta_max", cfg.sweep.beta_max);
    get(s, "count", cfg.sweep.count);
    if (s.contains("fix")) {
      const std::string fix = s.at("fix").get<std::string>();
      if (fix != "ell" && fix != "energy")
        fail(Errc::bad_config, "sweep.fix must be 'energy' or 'ell'");
      cfg.sweep.fix_ell = fix == "ell";
    }
  }
  get(j, "samples", cfg.samples);
  get(j, "phi_span", cfg.phi_span);
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    get(t, "rel", cfg.rel_tol);
    get(t, "abs", cfg.abs_tol);
  }
  get(j, "max_events", cfg.max_events);
  get(j, "out", cfg.out);
  return cfg;
}

}  // namespace

std::string emit_config(const RunConfig& cfg) {
  return to_json(cfg).dump(2) + "\n";
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::bad_config, std::string("config parse error: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    fail(Errc::bad_config, std::string("config field error: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void save_config(const std::string& path, const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write config file: " + path);
  out << emit_config(cfg);
}

SurfaceParams surface_of(const RunConfig& cfg) {
  return validate_params(cfg.a, cfg.b, cfg.c, cfg.d, cfg.m);
}

}  // namespace helix
