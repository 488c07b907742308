#include "helix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace helix {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanSamples = 8192;

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double flo, double tol) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* orbit_kind_name(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::bound: return "bound";
    case OrbitKind::unbound: return "unbound";
    case OrbitKind::equatorial_stable: return "equatorial-stable";
    case OrbitKind::equatorial_unstable: return "equatorial-unstable";
  }
  return "unknown";
}

double effective_potential(const SurfaceParams& p, double ell, double r) {
  const ProfileTerms t = profile_at(p, r);
  return ell * ell / (2.0 * (t.R * t.R + p.c * p.c));
}

double potential_derivative(const SurfaceParams& p, double ell, double r) {
  const ProfileTerms t = profile_at(p, r);
  const double gpp = t.R * t.R + p.c * p.c;
  // V' = -ell^2 gpp' / (2 gpp^2), gpp' = 2 R R' = -2 R T / b
  return ell * ell * t.R * t.T / (p.b * gpp * gpp);
}

double potential_second_derivative(const SurfaceParams& p, double ell,
                                   double r) {
  const ProfileTerms t = profile_at(p, r);
  const double gpp = t.R * t.R + p.c * p.c;
  const double dgpp = 2.0 * t.R * t.dR;
  const double d2gpp = 2.0 * (t.dR * t.dR - t.R * t.dT / p.b);
  return -ell * ell * (d2gpp * gpp - 2.0 * dgpp * dgpp) / (2.0 * gpp * gpp * gpp);
}

std::vector<Equilibrium> find_equilibria(const SurfaceParams& p, double ell) {
  if (ell == 0.0)
    fail(Errc::zero_momentum, "potential is flat for ell = 0");

  const double period = 2.0 * kPi * p.b;
  const double half = kPi * p.b;
  const double r_tol = 1e-12;

  auto vp = [&](double r) { return potential_derivative(p, ell, r); };

  // r = 0 and r = b*pi are critical for every integer m (T vanishes there
  // identically); seed them exactly so boundary round-off cannot lose them.
  std::vector<double> roots = {0.0, half};

  double prev_r = -half;
  double prev_f = vp(prev_r);
  for (int i = 1; i <= kScanSamples; ++i) {
    const double r = -half + period * i / kScanSamples;
    const double f = vp(r);
    if (prev_f == 0.0) {
      roots.push_back(prev_r);
    } else if ((prev_f < 0.0) != (f < 0.0) && f != 0.0) {
      double root = bisect(vp, prev_r, r, prev_f, r_tol);
      // one Newton polish
      const double v2 = potential_second_derivative(p, ell, root);
      if (v2 != 0.0) {
        const double step = vp(root) / v2;
        if (std::abs(step) < period / kScanSamples) root -= step;
      }
      roots.push_back(root);
    }
    prev_r = r;
    prev_f = f;
  }

  // canonicalize into (-half, half], dedupe
  std::vector<double> canon;
  for (double r : roots) {
    if (r <= -half + 1e-9 * p.b) r += period;
    bool dup = false;
    for (double q : canon)
      if (std::abs(q - r) < 1e-8 * p.b) dup = true;
    if (!dup) canon.push_back(r);
  }
  std::sort(canon.begin(), canon.end());

  std::vector<Equilibrium> out;
  const double degenerate_tol = 1e-10 * ell * ell / (p.b * p.b * p.b * p.b);
  for (double r : canon) {
    const double v2 = potential_second_derivative(p, ell, r);
    if (std::abs(v2) < degenerate_tol)
      fail(Errc::degenerate_critical,
           "critical point with vanishing curvature of the potential");
    out.push_back({r, v2 > 0.0 ? Stability::stable : Stability::unstable,
                   effective_potential(p, ell, r)});
  }
  return out;
}

namespace {

// Largest potential value over one period (top of the barrier).
double potential_max(const SurfaceParams& p, double ell) {
  double vmax = 0.0;
  const double half = kPi * p.b;
  for (int i = 0; i <= kScanSamples; ++i) {
    const double r = -half + 2.0 * half * i / kScanSamples;
    vmax = std::max(vmax, effective_potential(p, ell, r));
  }
  // refine via the critical points
  for (const Equilibrium& eq : find_equilibria(p, ell))
    vmax = std::max(vmax, eq.potential);
  return vmax;
}

// First root of V(r) = E moving from `from` in direction `dir`, within one
// period; NaN if none is found.
double first_crossing(const SurfaceParams& p, double ell, double energy,
                      double from, double dir) {
  auto g = [&](double r) { return effective_potential(p, ell, r) - energy; };
  const double period = 2.0 * kPi * p.b;
  const double step = dir * period / kScanSamples;
  double prev_r = from;
  double prev_f = g(prev_r);
  for (int i = 1; i <= kScanSamples; ++i) {
    const double r = from + step * i;
    const double f = g(r);
    if ((prev_f < 0.0) != (f < 0.0) || f == 0.0) {
      double lo = std::min(prev_r, r), hi = std::max(prev_r, r);
      double flo = lo == prev_r ? prev_f : f;
      double root = bisect(g, lo, hi, flo, 1e-13 * p.b);
      const double slope = potential_derivative(p, ell, root);
      if (slope != 0.0) {
        const double nstep = g(root) / slope;
        if (std::abs(nstep) < std::abs(step)) root -= nstep;
      }
      return root;
    }
    prev_r = r;
    prev_f = f;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::optional<TurningPoints> turning_points(const SurfaceParams& p,
                                            const ConservedPair& conserved) {
  const double ell = conserved.ell, energy = conserved.energy;
  if (ell == 0.0) return std::nullopt;  // flat potential, no turning radii

  const double v0 = effective_potential(p, ell, 0.0);
  if (energy < v0 * (1.0 - 1e-12))
    fail(Errc::below_minimum, "energy below the potential minimum");
  if (energy <= v0 * (1.0 + 1e-12)) return TurningPoints{0.0, 0.0};

  const double vmax = potential_max(p, ell);
  if (energy >= vmax * (1.0 - 1e-12)) return std::nullopt;  // unbound

  const double r_plus = first_crossing(p, ell, energy, 0.0, +1.0);
  return TurningPoints{r_plus, -r_plus};
}

OrbitAnalysis classify_orbit(const SurfaceParams& p,
                             const ConservedPair& conserved, double r0) {
  OrbitAnalysis out;
  out.conserved = conserved;

  if (conserved.ell == 0.0) {
    // flat potential: every radius is allowed, motion winds through both
    // equators indefinitely
    out.kind = OrbitKind::unbound;
    out.crosses_inner_equator = true;
    return out;
  }

  out.equilibria = find_equilibria(p, conserved.ell);
  const double energy = conserved.energy;

  const double v_r0 = effective_potential(p, conserved.ell, r0);
  if (energy < v_r0 * (1.0 - 1e-12))
    fail(Errc::below_minimum, "energy below the potential at the launch radius");

  // launch radius sitting on an equilibrium at its own potential level
  for (const Equilibrium& eq : out.equilibria) {
    const double dist = std::abs(wrap_angle((r0 - eq.r_star) / p.b)) * p.b;
    if (dist < 1e-9 * p.b && std::abs(energy - eq.potential) <=
                                 1e-12 * std::max(energy, eq.potential)) {
      out.kind = eq.stability == Stability::stable
                     ? OrbitKind::equatorial_stable
                     : OrbitKind::equatorial_unstable;
      out.turning = TurningPoints{r0, r0};
      return out;
    }
  }

  // separatrix band: within 1e-12 relative of any barrier top
  for (const Equilibrium& eq : out.equilibria) {
    if (eq.stability == Stability::unstable &&
        std::abs(energy - eq.potential) <=
            1e-12 * std::max(energy, eq.potential)) {
      out.kind = OrbitKind::equatorial_unstable;
      return out;
    }
  }

  double vmax = 0.0;
  for (const Equilibrium& eq : out.equilibria)
    vmax = std::max(vmax, eq.potential);
  if (energy > vmax) {
    out.kind = OrbitKind::unbound;
    out.crosses_inner_equator = true;
    return out;
  }

  out.kind = OrbitKind::bound;
  if (r0 == 0.0) {
    out.turning = turning_points(p, conserved);
  } else {
    // allowed band actually containing r0
    const double hi = first_crossing(p, conserved.ell, energy, r0, +1.0);
    const double lo = first_crossing(p, conserved.ell, energy, r0, -1.0);
    out.turning = TurningPoints{hi, lo};
  }
  return out;
}

}  // namespace helix
