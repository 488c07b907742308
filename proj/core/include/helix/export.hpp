#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "helix/config.hpp"
#include "helix/dynamics.hpp"
#include "helix/integrator.hpp"

namespace helix {

// Geodesic trace as CSV, one row per accepted step, 17 significant digits:
// lambda,r,chi_wrapped,phi,x,y,z,ur,uphi,ell_drift,E_drift
void write_geodesic_csv(std::ostream& os, const SurfaceParams& p,
                        const GeodesicTrace& trace);

// Run summary (conserved pair, drift, events, classification) as JSON text.
std::string geodesic_summary_json(const SurfaceParams& p,
                                  const GeodesicTrace& trace,
                                  const OrbitAnalysis& analysis);

// Effective-potential profile over one period: r,V,Vprime,K rows on a uniform
// grid, followed by one annotated footer row per equilibrium.
void write_potential_csv(std::ostream& os, const SurfaceParams& p, double ell,
                         int samples);

// Gaussian curvature over one period: r,K rows.
void write_curvature_csv(std::ostream& os, const SurfaceParams& p, int samples);

struct SweepRow {
  double beta;
  double ell;
  double energy;
  OrbitKind kind;
  double r_plus;       // NaN when there is no turning radius
  double half_period;  // lambda between turning points; NaN when not bound
};

// Orbit fan over beta in [beta_min, beta_max], launched from the outer
// equator, holding energy (or ell) fixed. Rows are computed concurrently and
// returned ordered by beta.
std::vector<SweepRow> run_sweep(const SurfaceParams& p, const SweepSpec& spec,
                                double fixed_energy, double fixed_ell);

// beta,ell,E,kind,r_plus,half_period_lambda
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

std::string area_report_json(const SurfaceParams& p, double phi_span,
                             double area);

}  // namespace helix
