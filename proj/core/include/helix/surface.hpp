#pragma once

#include "helix/errors.hpp"

namespace helix {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Helical tube of radius b around a helix of radius a and pitch 2*pi*c,
// with an optional cosine ridge of amplitude d and integer frequency m
// superposed on the circular cross-section profile.
//
// Coordinates: r is arc length along the profile (chi = r/b is the profile
// angle), phi is the angle along the helix. The embedding is
//   x = (a + b cos chi + d cos m chi) cos phi
//   y = (a + b cos chi + d cos m chi) sin phi
//   z = c phi + b sin chi + d sin m chi
struct SurfaceParams {
  double a = 1.5;
  double b = 1.0;
  double c = 0.8;
  double d = 0.0;
  int m = 0;
  double eta = 0.0;  // pitch angle, atan(c/a)
};

enum class ValidationMode {
  strict,     // requires the sufficient regularity bound d*m < b
  scan_only,  // accepts any profile that scans free of cusps
};

// Validates the five raw numbers and derives eta. Throws Error with code
// non_positive_b, axis_intersection, bad_frequency, or cusped_profile.
SurfaceParams validate_params(double a, double b, double c, double d, double m,
                              ValidationMode mode = ValidationMode::strict);

// Profile functions of r and their r-derivatives:
//   R = a + b cos chi + d cos m chi   (distance from the screw axis)
//   S = b cos chi + d m cos m chi
//   T = b sin chi + d m sin m chi
struct ProfileTerms {
  double R, S, T;
  double dR, dS, dT;
};

struct MetricComponents {
  double R, S, T;
  double g_phiphi;  // R^2 + c^2
  double g_phir;    // c S / b
  double g_rr;      // (S^2 + T^2) / b^2
  double M;         // sqrt(g_phiphi)
  double M_r;       // g_phir / g_phiphi
  double gamma_rr;  // g_rr - M^2 M_r^2
  double det_g;     // g_phiphi g_rr - g_phir^2 = M^2 gamma_rr
  double area_density;  // sqrt(det_g)
};

// First derivatives of the metric components in r, plus the second
// derivative of g_phiphi (all that curvature and the geodesic equations need).
struct MetricDerivatives {
  double dg_phiphi, dg_phir, dg_rr;
  double d2g_phiphi;
};

// Orthonormal frame adapted to the phi Killing direction and its dual
// coframe. Structural zeros (the dr component of e_phihat, the dphi
// component of w_rhat) are omitted.
struct FrameCoefficients {
  double e_r_dr;      // e_rhat = e_r_dr d/dr + e_r_dphi d/dphi
  double e_r_dphi;
  double e_phi_dphi;  // e_phihat = e_phi_dphi d/dphi
  double w_r_dr;      // w_rhat = w_r_dr dr
  double w_phi_dr;    // w_phihat = w_phi_dr dr + w_phi_dphi dphi
  double w_phi_dphi;
};

// A point of the surface carrying both coordinate charts and its embedding.
struct SurfacePoint {
  double r;
  double chi;  // r/b wrapped into (-pi, pi]
  double phi;
  Vec3 xyz;
};

// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

ProfileTerms profile_at(const SurfaceParams& p, double r);
Vec3 embed(const SurfaceParams& p, double chi, double phi);
SurfacePoint surface_point(const SurfaceParams& p, double r, double phi);
MetricComponents metric_at(const SurfaceParams& p, double r);
MetricDerivatives metric_derivatives_at(const SurfaceParams& p, double r);
FrameCoefficients frames_at(const SurfaceParams& p, double r);

// Gaussian curvature. The general route evaluates the curvature of a
// phi-independent metric from its r-derivatives; the smooth route is the
// closed form valid for d = 0. gaussian_curvature dispatches on d.
double gaussian_curvature(const SurfaceParams& p, double r);
double gaussian_curvature_general(const SurfaceParams& p, double r);
double gaussian_curvature_smooth(const SurfaceParams& p, double r);

}  // namespace helix
