#pragma once

#include <optional>
#include <vector>

#include "helix/surface.hpp"

namespace helix {

// Conserved quantities of geodesic motion: the angular momentum conjugate to
// phi and the (kinetic) energy, 2E = |u|^2.
struct ConservedPair {
  double ell = 0.0;
  double energy = 0.0;
};

enum class Stability { stable, unstable };

struct Equilibrium {
  double r_star;
  Stability stability;
  double potential;  // V(r_star)
};

// Radial turning points of the motion through the outer equator,
// mirror-symmetric by construction: r_minus = -r_plus.
struct TurningPoints {
  double r_plus;
  double r_minus;
};

enum class OrbitKind { bound, unbound, equatorial_stable, equatorial_unstable };

const char* orbit_kind_name(OrbitKind kind);

struct OrbitAnalysis {
  ConservedPair conserved;
  OrbitKind kind;
  std::optional<TurningPoints> turning;
  std::vector<Equilibrium> equilibria;
  // unbound orbits wind through the inner equator indefinitely
  bool crosses_inner_equator = false;
};

// Effective potential of the reduced radial problem, V = ell^2 / (2 M^2),
// and its first two r-derivatives.
double effective_potential(const SurfaceParams& p, double ell, double r);
double potential_derivative(const SurfaceParams& p, double ell, double r);
double potential_second_derivative(const SurfaceParams& p, double ell, double r);

// All critical points of V in (-b*pi, b*pi], classified by the sign of V''.
// The symmetry points r = 0 and r = b*pi are always critical and are seeded
// exactly; the rest come from a sign-change scan of V'. Throws zero_momentum
// for ell = 0 and degenerate_critical when |V''| is below resolution.
std::vector<Equilibrium> find_equilibria(const SurfaceParams& p, double ell);

// Smallest positive root of V(r) = E, mirrored. Requires E >= V(0) (the
// global minimum; throws below_minimum otherwise). Returns nothing when the
// motion is unbound (E at or above the top of the barrier).
std::optional<TurningPoints> turning_points(const SurfaceParams& p,
                                            const ConservedPair& conserved);

// Classifies the orbit with the given conserved pair whose motion passes
// through radius r0 (default: the outer equator). The reported turning
// interval is the allowed band actually containing r0, so initial data
// trapped in a ridge well off the outer equator is classified by its own
// well, not by the outer one.
OrbitAnalysis classify_orbit(const SurfaceParams& p,
                             const ConservedPair& conserved, double r0 = 0.0);

}  // namespace helix
