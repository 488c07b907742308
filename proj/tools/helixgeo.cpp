#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "helix/config.hpp"
#include "helix/export.hpp"
#include "helix/integrator.hpp"
#include "helix/mesh.hpp"
#include "helix/quadrature.hpp"

namespace {

using namespace helix;

// Writes to cfg.out, or stdout when no path is configured.
void deliver(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open output file: " + cfg.out);
  out << text;
  if (!out) fail(Errc::io_error, "short write: " + cfg.out);
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix;
}

IntegrateOptions integrate_options(const RunConfig& cfg) {
  IntegrateOptions opts;
  opts.rel_tol = cfg.rel_tol;
  opts.abs_tol = cfg.abs_tol;
  opts.max_events = cfg.max_events;
  return opts;
}

QuadTolerances quad_tolerances(const RunConfig& cfg) {
  return {cfg.abs_tol, cfg.rel_tol};
}

int run_mesh(const RunConfig& cfg) {
  const SurfaceParams p = surface_of(cfg);
  std::ostringstream os;
  write_obj(os, build_mesh(p, cfg.mesh));
  deliver(cfg, os.str());
  return 0;
}

int run_geodesic(const RunConfig& cfg) {
  if (cfg.out.empty())
    fail(Errc::bad_config, "geodesic needs --out (writes a CSV and a summary)");
  const SurfaceParams p = surface_of(cfg);
  const GeodesicState start =
      launch(p, {cfg.r0, cfg.phi0, cfg.beta, cfg.energy});
  const GeodesicTrace trace =
      integrate(p, start, cfg.lambda_end, integrate_options(cfg));
  const OrbitAnalysis analysis = classify_orbit(p, trace.initial, cfg.r0);

  std::ostringstream os;
  write_geodesic_csv(os, p, trace);
  deliver(cfg, os.str());

  const std::string summary_path = sibling_path(cfg.out, ".summary.json");
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) fail(Errc::io_error, "cannot open " + summary_path);
  summary << geodesic_summary_json(p, trace, analysis);
  return 0;
}

int run_potential(const RunConfig& cfg) {
  const SurfaceParams p = surface_of(cfg);
  std::ostringstream os;
  write_potential_csv(os, p, cfg.ell, cfg.samples);
  deliver(cfg, os.str());
  return 0;
}

int run_curvature(const RunConfig& cfg) {
  const SurfaceParams p = surface_of(cfg);
  std::ostringstream os;
  write_curvature_csv(os, p, cfg.samples);
  deliver(cfg, os.str());
  return 0;
}

int run_sweep_cmd(const RunConfig& cfg) {
  const SurfaceParams p = surface_of(cfg);
  std::ostringstream os;
  write_sweep_csv(os, run_sweep(p, cfg.sweep, cfg.energy, cfg.ell));
  deliver(cfg, os.str());
  return 0;
}

int run_area(const RunConfig& cfg) {
  const SurfaceParams p = surface_of(cfg);
  const double area = surface_area(p, cfg.phi_span, quad_tolerances(cfg));
  deliver(cfg, area_report_json(p, cfg.phi_span, area));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesics, curvature, and orbit structure of helical tubes"};
  app.require_subcommand(1);

  std::string config_path;
  bool legendre_exact = false;
  RunConfig cfg;

  app.add_option("--config", config_path, "JSON config file");
  app.add_flag("--legendre-exact", legendre_exact,
               "use the exact pitch c = 5/(2 pi) instead of 0.8");

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();  // lets --config / --legendre-exact follow the verb
    sub->add_option("--a", cfg.a, "helix radius");
    sub->add_option("--b", cfg.b, "profile radius");
    sub->add_option("--c", cfg.c, "pitch over 2 pi");
    sub->add_option("--d", cfg.d, "ridge amplitude");
    sub->add_option("--m", cfg.m, "ridge frequency");
    sub->add_option("--ell", cfg.ell, "angular momentum");
    sub->add_option("--energy", cfg.energy, "energy");
    sub->add_option("--beta", cfg.beta, "launch angle");
    sub->add_option("--r0", cfg.r0, "launch radius");
    sub->add_option("--phi0", cfg.phi0, "launch azimuth");
    sub->add_option("--lambda-end", cfg.lambda_end, "integration span");
    sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance");
    sub->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance");
    sub->add_option("--max-events", cfg.max_events, "event budget");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  CLI::App* mesh = app.add_subcommand("mesh", "triangulated tube as OBJ");
  add_common(mesh);
  mesh->add_option("--n-chi", cfg.mesh.n_chi, "profile samples");
  mesh->add_option("--n-phi", cfg.mesh.n_phi, "samples per revolution");
  mesh->add_option("--revolutions", cfg.mesh.revolutions, "span in turns");

  CLI::App* geo = app.add_subcommand("geodesic", "trace CSV plus summary JSON");
  add_common(geo);

  CLI::App* pot = app.add_subcommand("potential",
                                     "effective potential profile CSV");
  add_common(pot);
  pot->add_option("--samples", cfg.samples, "grid samples");

  CLI::App* curv = app.add_subcommand("curvature", "Gaussian curvature CSV");
  add_common(curv);
  curv->add_option("--samples", cfg.samples, "grid samples");

  CLI::App* sweep = app.add_subcommand("sweep", "orbit fan over launch angle");
  add_common(sweep);
  sweep->add_option("--beta-min", cfg.sweep.beta_min, "smallest launch angle");
  sweep->add_option("--beta-max", cfg.sweep.beta_max, "largest launch angle");
  sweep->add_option("--count", cfg.sweep.count, "number of rows");
  sweep->add_flag("--fix-ell", cfg.sweep.fix_ell,
                  "hold ell fixed instead of energy");

  CLI::App* area = app.add_subcommand("area", "patch area report");
  add_common(area);
  area->add_option("--phi-span", cfg.phi_span, "azimuthal span");

  // two-pass parse: the config file forms the base, explicit flags override
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!config_path.empty()) {
      RunConfig base = helix::load_config(config_path);
      std::swap(cfg, base);
      // replay command-line values on top of the file
      CLI::App* sub = app.get_subcommands().front();
      auto take = [&](CLI::App* owner, const std::string& name, auto& into,
                      auto& from) {
        const CLI::Option* opt = owner->get_option_no_throw(name);
        if (opt && opt->count() > 0) into = from;
      };
      take(sub, "--a", cfg.a, base.a);
      take(sub, "--b", cfg.b, base.b);
      take(sub, "--c", cfg.c, base.c);
      take(sub, "--d", cfg.d, base.d);
      take(sub, "--m", cfg.m, base.m);
      take(sub, "--ell", cfg.ell, base.ell);
      take(sub, "--energy", cfg.energy, base.energy);
      take(sub, "--beta", cfg.beta, base.beta);
      take(sub, "--r0", cfg.r0, base.r0);
      take(sub, "--phi0", cfg.phi0, base.phi0);
      take(sub, "--lambda-end", cfg.lambda_end, base.lambda_end);
      take(sub, "--rel-tol", cfg.rel_tol, base.rel_tol);
      take(sub, "--abs-tol", cfg.abs_tol, base.abs_tol);
      take(sub, "--max-events", cfg.max_events, base.max_events);
      take(sub, "--out", cfg.out, base.out);
      take(sub, "--n-chi", cfg.mesh.n_chi, base.mesh.n_chi);
      take(sub, "--n-phi", cfg.mesh.n_phi, base.mesh.n_phi);
      take(sub, "--revolutions", cfg.mesh.revolutions, base.mesh.revolutions);
      take(sub, "--samples", cfg.samples, base.samples);
      take(sub, "--beta-min", cfg.sweep.beta_min, base.sweep.beta_min);
      take(sub, "--beta-max", cfg.sweep.beta_max, base.sweep.beta_max);
      take(sub, "--count", cfg.sweep.count, base.sweep.count);
      take(sub, "--fix-ell", cfg.sweep.fix_ell, base.sweep.fix_ell);
      take(sub, "--phi-span", cfg.phi_span, base.phi_span);
    }
    if (legendre_exact) cfg.c = 5.0 / (2.0 * std::numbers::pi);

    if (app.got_subcommand("mesh")) return run_mesh(cfg);
    if (app.got_subcommand("geodesic")) return run_geodesic(cfg);
    if (app.got_subcommand("potential")) return run_potential(cfg);
    if (app.got_subcommand("curvature")) return run_curvature(cfg);
    if (app.got_subcommand("sweep")) return run_sweep_cmd(cfg);
    if (app.got_subcommand("area")) return run_area(cfg);
    return 1;
  } catch (const helix::Error& e) {
    std::cerr << "error (" << helix::errc_name(e.code()) << "): " << e.what()
              << "\n";
    return helix::is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
