#pragma once

#include <functional>

#include "helix/dynamics.hpp"
#include "helix/surface.hpp"

namespace helix {

struct QuadTolerances {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
};

// Globally adaptive Gauss-Kronrod 7/15 quadrature.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadTolerances& tol = {});

// Radial speed along an orbit, f(r) = sqrt(2 (E - V(r)) / gamma_rr(r)).
double radial_speed(const SurfaceParams& p, const ConservedPair& conserved,
                    double r);

// Parameter elapsed between radii: lambda = integral dr / f(r). Endpoints may
// be turning points; the inverse-square-root behaviour there is removed by a
// square-root substitution with an analytic stub for the last 1e-8*b.
// Throws forbidden_region if V > E strictly inside the interval.
double lambda_of_r(const SurfaceParams& p, const ConservedPair& conserved,
                   double r0, double r1, const QuadTolerances& tol = {});

// Azimuth advance of an ell = 0 geodesic between radii: -integral M_r dr.
double phi_of_r_zero_momentum(const SurfaceParams& p, double r0, double r1,
                              const QuadTolerances& tol = {});

// Area of the surface patch covering phi_span in phi and a full profile
// period in r.
double surface_area(const SurfaceParams& p, double phi_span,
                    const QuadTolerances& tol = {});

}  // namespace helix
