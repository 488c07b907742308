#pragma once

#include <cstddef>
#include <vector>

#include "helix/dynamics.hpp"
#include "helix/surface.hpp"

namespace helix {

struct GeodesicState {
  double lambda = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double ur = 0.0;    // dr/dlambda
  double uphi = 0.0;  // dphi/dlambda
};

struct Acceleration {
  double ar, aphi;
};

// Orthonormal-frame velocity components; 2E = u_rhat^2 + u_phihat^2 and
// ell = M u_phihat.
struct OrthonormalVelocity {
  double u_rhat, u_phihat;
};

// Launch from (r0, phi0) with speed sqrt(2E) at angle beta measured from the
// outward radial frame direction toward the phi direction: beta = pi/2 runs
// along the tube, beta = 0 straight across it.
struct LaunchSpec {
  double r0 = 0.0;
  double phi0 = 0.0;
  double beta = 0.0;
  double energy = 0.5;
};

enum class EventType { turning_point, outer_equator, inner_equator };

const char* event_type_name(EventType type);

struct TraceEvent {
  EventType type;
  double lambda;
  GeodesicState state;
};

struct IntegrateOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;  // 0 = uncapped
  std::size_t max_steps = 5000000;
  std::size_t max_events = 100000;
};

struct TraceSample {
  GeodesicState state;
  Vec3 xyz;
  // instantaneous relative deviation of the conserved pair from launch
  double ell_drift;
  double energy_drift;
};

struct GeodesicTrace {
  std::vector<TraceSample> samples;  // one per accepted step, plus the start
  std::vector<TraceEvent> events;
  ConservedPair initial;
  double ell_drift = 0.0;     // max over samples
  double energy_drift = 0.0;  // max over samples
};

// Geodesic accelerations. The general form assembles the connection from the
// metric derivatives and is valid for every parameter set; the smooth form is
// the explicit d = 0 reduction, kept as an independent algebraic path for
// cross-validation.
Acceleration rhs_general(const SurfaceParams& p, const GeodesicState& s);
Acceleration rhs_explicit_smooth(const SurfaceParams& p, const GeodesicState& s);

GeodesicState launch(const SurfaceParams& p, const LaunchSpec& spec);
OrthonormalVelocity orthonormal_velocity(const SurfaceParams& p,
                                         const GeodesicState& s);
ConservedPair conserved_of(const SurfaceParams& p, const GeodesicState& s);

// Launch-angle equivalent of a state, atan2(u_phihat, u_rhat). Throws
// zero_speed when the velocity vanishes.
double state_beta(const SurfaceParams& p, const GeodesicState& s);

// Adaptive embedded Runge-Kutta 5(4) with dense output. Events (radial
// turning points ur = 0, outer-equator crossings r = 0 mod 2 pi b, inner-
// equator crossings r = b pi mod 2 pi b) are located by sign change plus
// bisection on the dense interpolant to 1e-12 in lambda. No conserved-
// quantity projection is applied; the drift fields are the honest error
// signal. Throws step_failure and event_storm.
GeodesicTrace integrate(const SurfaceParams& p, const GeodesicState& start,
                        double lambda_end, const IntegrateOptions& opts = {});

}  // namespace helix
