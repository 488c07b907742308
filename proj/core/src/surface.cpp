#include "helix/surface.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace helix {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::non_positive_b: return "non_positive_b";
    case Errc::axis_intersection: return "axis_intersection";
    case Errc::bad_frequency: return "bad_frequency";
    case Errc::cusped_profile: return "cusped_profile";
    case Errc::bad_config: return "bad_config";
    case Errc::zero_momentum: return "zero_momentum";
    case Errc::zero_speed: return "zero_speed";
    case Errc::below_minimum: return "below_minimum";
    case Errc::forbidden_region: return "forbidden_region";
    case Errc::degenerate_critical: return "degenerate_critical";
    case Errc::step_failure: return "step_failure";
    case Errc::event_storm: return "event_storm";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

bool is_validation_error(Errc code) {
  switch (code) {
    case Errc::non_positive_b:
    case Errc::axis_intersection:
    case Errc::bad_frequency:
    case Errc::cusped_profile:
    case Errc::bad_config:
    case Errc::zero_momentum:
    case Errc::zero_speed:
    case Errc::below_minimum:
    case Errc::forbidden_region:
      return true;
    default:
      return false;
  }
}

double wrap_angle(double x) {
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

SurfaceParams validate_params(double a, double b, double c, double d, double m,
                              ValidationMode mode) {
  if (!(b > 0.0)) fail(Errc::non_positive_b, "profile radius b must be positive");
  if (!(a - b - d > 0.0))
    fail(Errc::axis_intersection,
         "tube touches the screw axis: need a - b - d > 0");

  int mi = 0;
  if (d != 0.0) {
    if (d < 0.0) fail(Errc::bad_frequency, "ridge amplitude d must be nonnegative");
    double mr = std::round(m);
    if (!(std::abs(m - mr) == 0.0) || mr < 2.0)
      fail(Errc::bad_frequency, "ridge frequency m must be an integer >= 2");
    mi = static_cast<int>(mr);

    if (mode == ValidationMode::strict && !(d * mi < b))
      fail(Errc::cusped_profile,
           "profile regularity bound d*m < b violated");
    // scan S^2 + T^2 for cusps over one period
    const int n = 4096;
    double min_q = b * b;
    for (int i = 0; i < n; ++i) {
      double chi = -kPi + 2.0 * kPi * i / n;
      double s = b * std::cos(chi) + d * mi * std::cos(mi * chi);
      double t = b * std::sin(chi) + d * mi * std::sin(mi * chi);
      min_q = std::min(min_q, s * s + t * t);
    }
    if (min_q <= 1e-12 * b * b)
      fail(Errc::cusped_profile, "profile has a cusp: S^2 + T^2 vanishes");
  } else {
    mi = static_cast<int>(std::round(m));
    if (mi < 0) mi = 0;
  }

  SurfaceParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.d = d;
  p.m = mi;
  p.eta = std::atan2(c, a);
  return p;
}

ProfileTerms profile_at(const SurfaceParams& p, double r) {
  const double chi = r / p.b;
  const double cb = std::cos(chi), sb = std::sin(chi);
  const double cm = std::cos(p.m * chi), sm = std::sin(p.m * chi);
  ProfileTerms t;
  t.R = p.a + p.b * cb + p.d * cm;
  t.S = p.b * cb + p.d * p.m * cm;
  t.T = p.b * sb + p.d * p.m * sm;
  t.dR = -t.T / p.b;
  t.dS = -sb - (p.d * p.m * p.m / p.b) * sm;
  t.dT = cb + (p.d * p.m * p.m / p.b) * cm;
  return t;
}

Vec3 embed(const SurfaceParams& p, double chi, double phi) {
  const double rho =
      p.a + p.b * std::cos(chi) + p.d * std::cos(p.m * chi);
  return {rho * std::cos(phi), rho * std::sin(phi),
          p.c * phi + p.b * std::sin(chi) + p.d * std::sin(p.m * chi)};
}

SurfacePoint surface_point(const SurfaceParams& p, double r, double phi) {
  const double chi = r / p.b;
  return {r, wrap_angle(chi), phi, embed(p, chi, phi)};
}

MetricComponents metric_at(const SurfaceParams& p, double r) {
  const ProfileTerms t = profile_at(p, r);
  MetricComponents g;
  g.R = t.R;
  g.S = t.S;
  g.T = t.T;
  g.g_phiphi = t.R * t.R + p.c * p.c;
  g.g_phir = p.c * t.S / p.b;
  g.g_rr = (t.S * t.S + t.T * t.T) / (p.b * p.b);
  g.M = std::sqrt(g.g_phiphi);
  g.M_r = g.g_phir / g.g_phiphi;
  g.gamma_rr = g.g_rr - g.g_phir * g.g_phir / g.g_phiphi;
  g.det_g = g.g_phiphi * g.g_rr - g.g_phir * g.g_phir;
  g.area_density = std::sqrt(g.det_g);
  return g;
}

MetricDerivatives metric_derivatives_at(const SurfaceParams& p, double r) {
  const ProfileTerms t = profile_at(p, r);
  MetricDerivatives d;
  d.dg_phiphi = 2.0 * t.R * t.dR;
  d.dg_phir = p.c * t.dS / p.b;
  d.dg_rr = 2.0 * (t.S * t.dS + t.T * t.dT) / (p.b * p.b);
  // R'' = -T'/b
  d.d2g_phiphi = 2.0 * (t.dR * t.dR - t.R * t.dT / p.b);
  return d;
}

FrameCoefficients frames_at(const SurfaceParams& p, double r) {
  const MetricComponents g = metric_at(p, r);
  const double root_gamma = std::sqrt(g.gamma_rr);
  FrameCoefficients f;
  f.e_r_dr = 1.0 / root_gamma;
  f.e_r_dphi = -g.M_r / root_gamma;
  f.e_phi_dphi = 1.0 / g.M;
  f.w_r_dr = root_gamma;
  f.w_phi_dr = g.M * g.M_r;
  f.w_phi_dphi = g.M;
  return f;
}

double gaussian_curvature_general(const SurfaceParams& p, double r) {
  const MetricComponents g = metric_at(p, r);
  const MetricDerivatives dg = metric_derivatives_at(p, r);
  const double E = g.g_rr, F = g.g_phir, G = g.g_phiphi;
  const double dE = dg.dg_rr, dF = dg.dg_phir, dG = dg.dg_phiphi;
  const double det = E * G - F * F;
  return (-0.5 * dg.d2g_phiphi * det + 0.25 * dE * dG * G -
          0.5 * dF * dG * F + 0.25 * E * dG * dG) /
         (det * det);
}

double gaussian_curvature_smooth(const SurfaceParams& p, double r) {
  const double chi = r / p.b;
  const double cb = std::cos(chi), sb = std::sin(chi);
  const double R = p.a + p.b * cb;
  const double den = R * R + p.c * p.c * sb * sb;
  return (cb * R * R * R - p.b * p.c * p.c * sb * sb * sb * sb) /
         (p.b * den * den);
}

double gaussian_curvature(const SurfaceParams& p, double r) {
  return p.d == 0.0 ? gaussian_curvature_smooth(p, r)
                    : gaussian_curvature_general(p, r);
}

}  // namespace helix
