#pragma once

#include <cstddef>
#include <string>

#include "helix/integrator.hpp"
#include "helix/mesh.hpp"
#include "helix/quadrature.hpp"

namespace helix {

struct SweepSpec {
  double beta_min = 0.02;
  double beta_max = 1.5707963267948966;  // pi/2
  int count = 64;
  bool fix_ell = false;  // false: hold energy fixed across the fan, true: ell
  bool operator==(const SweepSpec&) const = default;
};

// Everything a run needs, loadable from a JSON file and overridable from the
// command line. Round-trips losslessly through emit/parse.
struct RunConfig {
  // raw surface numbers; validated where used
  double a = 1.5;
  double b = 1.0;
  double c = 0.8;
  double d = 0.05;
  int m = 10;

  double ell = 1.0;
  double energy = 0.5;
  double beta = 1.0;
  double r0 = 0.0;
  double phi0 = 0.0;
  double lambda_end = 100.0;

  MeshSpec mesh;
  SweepSpec sweep;
  int samples = 1001;                      // potential/curvature grids
  double phi_span = 15.707963267948966;    // 2 pi * 2.5
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_events = 100000;
  std::string out;  // output path; empty means stdout

  bool operator==(const RunConfig&) const = default;
};

std::string emit_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);  // throws bad_config
RunConfig load_config(const std::string& path);   // throws io_error/bad_config
void save_config(const std::string& path, const RunConfig& cfg);

SurfaceParams surface_of(const RunConfig& cfg);

}  // namespace helix
