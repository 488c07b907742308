#include "helix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace helix {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod extension of 7-point Gauss (positive half)
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, integral, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  const double fc = f(mid);
  double res_g = wg[3] * fc;
  double res_k = wgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hw * xgk[j];
    const double fsum = f(mid - dx) + f(mid + dx);
    res_k += wgk[j] * fsum;
    if (j % 2 == 1) res_g += wg[j / 2] * fsum;
  }
  return {a, b, res_k * hw, std::abs((res_k - res_g) * hw)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadTolerances& tol) {
  if (a == b) return 0.0;
  const double sgn = a < b ? 1.0 : -1.0;
  if (sgn < 0.0) std::swap(a, b);

  std::priority_queue<Panel> panels;
  Panel whole = gk15(f, a, b);
  double total = whole.integral, err = whole.error;
  panels.push(whole);

  for (int it = 0; it < 2000; ++it) {
    if (err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) break;
    const Panel worst = panels.top();
    panels.pop();
    if (worst.b - worst.a < 1e-15 * (b - a)) {
      panels.push(worst);  // cannot subdivide further
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  return sgn * total;
}

double radial_speed(const SurfaceParams& p, const ConservedPair& conserved,
                    double r) {
  const MetricComponents g = metric_at(p, r);
  const double v = effective_potential(p, conserved.ell, r);
  const double q = 2.0 * std::max(conserved.energy - v, 0.0);
  return std::sqrt(q / g.gamma_rr);
}

namespace {

// lambda over [s, s + dir*len] where s may be a turning point. The
// square-root substitution r = s + dir*u^2 makes the integrand smooth; when
// the endpoint is an actual root of E - V, the innermost 1e-8*b is replaced
// by the analytic leading-order contribution.
double lambda_half(const SurfaceParams& p, const ConservedPair& cp, double s,
                   double dir, double len, const QuadTolerances& tol) {
  if (len <= 0.0) return 0.0;
  const double vs = effective_potential(p, cp.ell, s);
  const bool turning =
      cp.energy - vs <= 1e-9 * std::max(cp.energy, std::abs(vs));

  auto integrand = [&](double u) {
    return 2.0 * u / radial_speed(p, cp, s + dir * u * u);
  };

  if (!turning)
    return integrate_adaptive(integrand, 0.0, std::sqrt(len), tol);

  const double cut = 1e-8 * p.b;
  const double vp = std::abs(potential_derivative(p, cp.ell, s));
  const double gamma = metric_at(p, s).gamma_rr;
  if (len <= cut) return 2.0 * std::sqrt(len * gamma / (2.0 * vp));
  const double stub = 2.0 * std::sqrt(cut * gamma / (2.0 * vp));
  return stub +
         integrate_adaptive(integrand, std::sqrt(cut), std::sqrt(len), tol);
}

}  // namespace

double lambda_of_r(const SurfaceParams& p, const ConservedPair& conserved,
                   double r0, double r1, const QuadTolerances& tol) {
  if (r0 == r1) return 0.0;
  const double lo = std::min(r0, r1), hi = std::max(r0, r1);

  // reject intervals that poke into the classically forbidden region
  const int n_check = 512;
  for (int i = 1; i < n_check; ++i) {
    const double r = lo + (hi - lo) * i / n_check;
    const double v = effective_potential(p, conserved.ell, r);
    if (v - conserved.energy > 1e-10 * std::max(conserved.energy, v))
      fail(Errc::forbidden_region,
           "interval crosses the classically forbidden region");
  }

  const double mid = 0.5 * (lo + hi);
  return lambda_half(p, conserved, lo, +1.0, mid - lo, tol) +
         lambda_half(p, conserved, hi, -1.0, hi - mid, tol);
}

double phi_of_r_zero_momentum(const SurfaceParams& p, double r0, double r1,
                              const QuadTolerances& tol) {
  auto integrand = [&](double r) { return metric_at(p, r).M_r; };
  return -integrate_adaptive(integrand, r0, r1, tol);
}

double surface_area(const SurfaceParams& p, double phi_span,
                    const QuadTolerances& tol) {
  if (!(phi_span > 0.0))
    fail(Errc::bad_config, "phi span must be positive");
  auto integrand = [&](double r) { return metric_at(p, r).area_density; };
  return phi_span * integrate_adaptive(integrand, 0.0, 2.0 * kPi * p.b, tol);
}

}  // namespace helix
