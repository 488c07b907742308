#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helix/integrator.hpp"
#include "helix/quadrature.hpp"

using namespace helix;

namespace {

constexpr double kPi = std::numbers::pi;

SurfaceParams torus() { return validate_params(2.0, 1.0, 0.0, 0.0, 0); }
SurfaceParams helical() { return validate_params(2.0, 1.0, 0.8, 0.0, 0); }
SurfaceParams ridged() { return validate_params(1.5, 1.0, 0.8, 0.05, 10); }

// Launch angle that realizes a given conserved pair from the outer equator.
double beta_for(const SurfaceParams& p, double ell, double energy) {
  return std::asin(ell / (std::sqrt(2 * energy) * metric_at(p, 0.0).M));
}

}  // namespace

TEST_CASE("explicit smooth accelerations equal the assembled ones") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ur_dist(-1.5, 1.5);
  std::uniform_real_distribution<double> r_dist(-kPi, kPi);
  for (const SurfaceParams& p :
       {torus(), helical(), validate_params(3.0, 0.7, -1.2, 0, 0)}) {
    for (int i = 0; i < 1000; ++i) {
      GeodesicState s;
      s.r = r_dist(rng) * p.b;
      s.ur = ur_dist(rng);
      s.uphi = ur_dist(rng);
      Acceleration ga = rhs_general(p, s);
      Acceleration ea = rhs_explicit_smooth(p, s);
      double scale =
          std::max({std::fabs(ga.ar), std::fabs(ga.aphi), 1e-3});
      CHECK(std::fabs(ga.ar - ea.ar) / scale < 1e-12);
      CHECK(std::fabs(ga.aphi - ea.aphi) / scale < 1e-12);
    }
  }
}

TEST_CASE("the outer equator is an exact fixed line of the flow") {
  for (const SurfaceParams& p : {helical(), ridged()}) {
    GeodesicState s;
    s.r = 0.0;
    s.ur = 0.0;
    s.uphi = 0.7;
    Acceleration a = rhs_general(p, s);
    CHECK(a.ar == 0.0);
    CHECK(a.aphi == 0.0);
  }
  GeodesicState s;
  s.uphi = 0.7;
  Acceleration e = rhs_explicit_smooth(helical(), s);
  CHECK(e.ar == 0.0);
  CHECK(e.aphi == 0.0);
}

TEST_CASE("the inner equator is a fixed line up to round-off") {
  for (const SurfaceParams& p : {helical(), ridged()}) {
    GeodesicState s;
    s.r = kPi * p.b;
    s.ur = 0.0;
    s.uphi = 0.7;
    Acceleration a = rhs_general(p, s);
    CHECK(a.ar == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
    CHECK(a.aphi == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("launching realizes the requested conserved pair") {
  SurfaceParams p = ridged();
  for (double beta : {0.2, 0.9, 1.4, kPi / 2, -0.7, 2.8}) {
    LaunchSpec spec{0.0, 0.3, beta, 0.5};
    GeodesicState s = launch(p, spec);
    ConservedPair con = conserved_of(p, s);
    CHECK(con.energy == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(con.ell == doctest::Approx(std::sqrt(2 * 0.5) * metric_at(p, 0.0).M *
                                     std::sin(beta))
                         .epsilon(1e-13)
                         .scale(1.0));
    CHECK(s.phi == 0.3);
    CHECK(state_beta(p, s) == doctest::Approx(beta).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("launch away from the equator and the frame velocity split") {
  SurfaceParams p = ridged();
  LaunchSpec spec{1.1, 0.0, 0.6, 0.8};
  GeodesicState s = launch(p, spec);
  OrthonormalVelocity v = orthonormal_velocity(p, s);
  CHECK(v.u_rhat * v.u_rhat + v.u_phihat * v.u_phihat ==
        doctest::Approx(2 * 0.8).epsilon(1e-13));
  CHECK(v.u_rhat == doctest::Approx(std::sqrt(1.6) * std::cos(0.6)).epsilon(1e-13));
  CHECK(v.u_phihat ==
        doctest::Approx(std::sqrt(1.6) * std::sin(0.6)).epsilon(1e-13));
  ConservedPair con = conserved_of(p, s);
  CHECK(con.ell ==
        doctest::Approx(metric_at(p, 1.1).M * v.u_phihat).epsilon(1e-13));
}

TEST_CASE("a purely radial launch carries no angular momentum") {
  SurfaceParams p = helical();
  GeodesicState s = launch(p, {0.4, 0.0, 0.0, 0.5});
  ConservedPair con = conserved_of(p, s);
  CHECK(con.ell == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));
  MetricComponents g = metric_at(p, 0.4);
  // zero momentum forces the azimuthal rate to cancel the metric shift
  CHECK(s.uphi == doctest::Approx(-g.M_r * s.ur).epsilon(1e-13));
}

TEST_CASE("launch and state_beta reject nonsense") {
  SurfaceParams p = helical();
  CHECK_THROWS_AS(launch(p, {0.0, 0.0, 1.0, -0.5}), Error);
  GeodesicState still;
  CHECK_THROWS_AS(state_beta(p, still), Error);
  try {
    state_beta(p, still);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_speed);
  }
}

TEST_CASE("conserved quantities drift below tolerance") {
  SurfaceParams p = ridged();
  for (double beta : {0.55, 1.1, 1.45}) {
    GeodesicTrace tr = integrate(p, launch(p, {0.0, 0.0, beta, 0.5}), 40.0);
    CHECK(tr.ell_drift < 5e-9);
    CHECK(tr.energy_drift < 5e-9);
  }
}

TEST_CASE("trace bookkeeping") {
  SurfaceParams p = helical();
  GeodesicState s0 = launch(p, {0.0, 0.0, 0.8, 0.5});
  GeodesicTrace tr = integrate(p, s0, 12.0);

  REQUIRE(tr.samples.size() > 5);
  CHECK(tr.samples.front().state.r == s0.r);
  CHECK(tr.samples.front().state.ur == s0.ur);
  CHECK(tr.samples.front().state.lambda == 0.0);
  CHECK(tr.samples.back().state.lambda == doctest::Approx(12.0).epsilon(1e-14));
  for (std::size_t i = 1; i < tr.samples.size(); ++i)
    CHECK(tr.samples[i].state.lambda > tr.samples[i - 1].state.lambda);

  double worst_ell = 0.0, worst_e = 0.0;
  for (const auto& s : tr.samples) {
    worst_ell = std::max(worst_ell, std::fabs(s.ell_drift));
    worst_e = std::max(worst_e, std::fabs(s.energy_drift));
  }
  CHECK(tr.ell_drift == worst_ell);
  CHECK(tr.energy_drift == worst_e);

  const TraceSample& mid = tr.samples[tr.samples.size() / 2];
  Vec3 q = embed(p, mid.state.r / p.b, mid.state.phi);
  CHECK(mid.xyz.x == doctest::Approx(q.x).epsilon(1e-12).scale(1.0));
  CHECK(mid.xyz.y == doctest::Approx(q.y).epsilon(1e-12).scale(1.0));
  CHECK(mid.xyz.z == doctest::Approx(q.z).epsilon(1e-12).scale(1.0));

  CHECK(tr.initial.ell ==
        doctest::Approx(conserved_of(p, s0).ell).epsilon(1e-15));
}

TEST_CASE("time reversal returns home") {
  SurfaceParams p = ridged();
  for (double beta : {0.8, 1.2, 1.5}) {
    GeodesicState s0 = launch(p, {0.0, 0.0, beta, 0.5});
    GeodesicTrace fwd = integrate(p, s0, 30.0);
    GeodesicState turn = fwd.samples.back().state;
    turn.lambda = 0.0;
    turn.ur = -turn.ur;
    turn.uphi = -turn.uphi;
    GeodesicTrace back = integrate(p, turn, 30.0);
    const GeodesicState& end = back.samples.back().state;
    CHECK(end.r == doctest::Approx(s0.r).epsilon(1e-6).scale(1.0));
    CHECK(end.phi == doctest::Approx(s0.phi).epsilon(1e-6).scale(1.0));
    CHECK(end.ur == doctest::Approx(-s0.ur).epsilon(1e-6).scale(1.0));
    CHECK(end.uphi == doctest::Approx(-s0.uphi).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("the screw flip maps geodesics to geodesics") {
  // (r, phi) -> (-r, -phi) is an isometry even with pitch; it is realized by
  // shifting the launch angle by pi.
  SurfaceParams p = helical();
  GeodesicState a = launch(p, {0.0, 0.0, 0.9, 0.5});
  GeodesicState b = launch(p, {0.0, 0.0, 0.9 - kPi, 0.5});
  GeodesicState ea = integrate(p, a, 10.0).samples.back().state;
  GeodesicState eb = integrate(p, b, 10.0).samples.back().state;
  CHECK(eb.r == doctest::Approx(-ea.r).epsilon(1e-7).scale(1.0));
  CHECK(eb.phi == doctest::Approx(-ea.phi).epsilon(1e-7).scale(1.0));
}

TEST_CASE("without pitch the radial flip alone is a symmetry") {
  SurfaceParams p = torus();
  GeodesicState a = launch(p, {0.0, 0.0, 0.9, 0.5});
  GeodesicState b = launch(p, {0.0, 0.0, kPi - 0.9, 0.5});
  GeodesicState ea = integrate(p, a, 10.0).samples.back().state;
  GeodesicState eb = integrate(p, b, 10.0).samples.back().state;
  CHECK(eb.r == doctest::Approx(-ea.r).epsilon(1e-7).scale(1.0));
  CHECK(eb.phi == doctest::Approx(ea.phi).epsilon(1e-7).scale(1.0));
}

TEST_CASE("turning events sit on the potential contour") {
  SurfaceParams p = helical();
  ConservedPair con{1.0, 0.2};
  auto tp = turning_points(p, con);
  REQUIRE(tp.has_value());

  GeodesicState s0 = launch(p, {0.0, 0.0, beta_for(p, 1.0, 0.2), 0.2});
  GeodesicTrace tr = integrate(p, s0, 40.0);

  int n_turn = 0, n_outer = 0;
  for (const auto& ev : tr.events) {
    if (ev.type == EventType::turning_point) {
      ++n_turn;
      CHECK(std::fabs(std::fabs(ev.state.r) - tp->r_plus) < 1e-8);
      CHECK(std::fabs(ev.state.ur) < 1e-8);
    } else if (ev.type == EventType::outer_equator) {
      ++n_outer;
      CHECK(std::fabs(ev.state.r) < 1e-9);
    } else {
      FAIL("bound orbit reached the inner equator");
    }
  }
  // half period is about 11.8, so lambda = 40 fits three turnings
  CHECK(n_turn == 3);
  CHECK(n_outer == 3);
  for (std::size_t i = 1; i < tr.events.size(); ++i)
    CHECK(tr.events[i].lambda > tr.events[i - 1].lambda);
}

TEST_CASE("unbound orbits ring the inner equator") {
  SurfaceParams p = helical();
  GeodesicState s0 = launch(p, {0.0, 0.0, beta_for(p, 1.0, 0.4), 0.4});
  GeodesicTrace tr = integrate(p, s0, 30.0);
  int n_inner = 0;
  for (const auto& ev : tr.events) {
    if (ev.type != EventType::inner_equator) continue;
    ++n_inner;
    CHECK(std::fabs(std::cos(ev.state.r / (2 * p.b))) < 1e-9);
  }
  CHECK(n_inner > 0);
  for (const auto& ev : tr.events)
    CHECK(ev.type != EventType::turning_point);
}

TEST_CASE("the frame angle obeys the shifted sine law along a trace") {
  SurfaceParams p = helical();
  double ell = 1.0, energy = 0.2;
  GeodesicState s0 = launch(p, {0.0, 0.0, beta_for(p, ell, energy), energy});
  GeodesicTrace tr = integrate(p, s0, 40.0);
  const double rhs = ell / std::sqrt(2 * energy);
  for (const auto& s : tr.samples) {
    double lhs = metric_at(p, s.state.r).M * std::sin(state_beta(p, s.state));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("a tangential launch at a ridge minimum stays circular") {
  SurfaceParams p = ridged();
  const double r_star = 0.50001593832581304;
  GeodesicState s0 = launch(p, {r_star, 0.0, kPi / 2, 0.5});
  GeodesicTrace tr = integrate(p, s0, 20.0);
  double worst = 0.0;
  for (const auto& s : tr.samples)
    worst = std::max(worst, std::fabs(s.state.r - r_star));
  CHECK(worst < 1e-8);
}

TEST_CASE("integration failure modes") {
  SurfaceParams p = ridged();
  GeodesicState s0 = launch(p, {0.0, 0.0, 1.1, 0.5});

  CHECK_THROWS_AS(integrate(p, s0, 0.0), Error);
  CHECK_THROWS_AS(integrate(p, s0, -1.0), Error);

  IntegrateOptions starve;
  starve.max_steps = 3;
  try {
    integrate(p, s0, 100.0, starve);
    FAIL("expected step starvation to throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::step_failure);
  }

  IntegrateOptions few_events;
  few_events.max_events = 2;
  try {
    integrate(p, s0, 100.0, few_events);
    FAIL("expected the event budget to blow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::event_storm);
  }
}

TEST_CASE("tighter tolerances reduce drift") {
  SurfaceParams p = ridged();
  GeodesicState s0 = launch(p, {0.0, 0.0, 1.1, 0.5});
  IntegrateOptions loose;
  loose.rel_tol = 1e-6;
  loose.abs_tol = 1e-8;
  IntegrateOptions tight;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-14;
  GeodesicTrace a = integrate(p, s0, 20.0, loose);
  GeodesicTrace b = integrate(p, s0, 20.0, tight);
  CHECK(b.energy_drift < a.energy_drift);
  CHECK(b.samples.size() > a.samples.size());
}
