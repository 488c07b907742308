#include "helix/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace helix {

namespace {

// Dormand-Prince 5(4) tableau with the dense-output weights.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

using Y = std::array<double, 4>;  // r, phi, ur, uphi

Y rhs(const SurfaceParams& p, const Y& y) {
  GeodesicState s;
  s.r = y[0];
  s.phi = y[1];
  s.ur = y[2];
  s.uphi = y[3];
  const Acceleration acc = rhs_general(p, s);
  return {y[2], y[3], acc.ar, acc.aphi};
}

struct DenseSegment {
  double lambda0, h;
  std::array<Y, 5> rcont;
  Y eval(double lambda) const {
    const double th = (lambda - lambda0) / h;
    const double th1 = 1.0 - th;
    Y out;
    for (int i = 0; i < 4; ++i)
      out[i] = rcont[0][i] +
               th * (rcont[1][i] +
                     th1 * (rcont[2][i] +
                            th * (rcont[3][i] + th1 * rcont[4][i])));
    return out;
  }
};

GeodesicState to_state(double lambda, const Y& y) {
  return {lambda, y[0], y[1], y[2], y[3]};
}

bool finite(const Y& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

const char* event_type_name(EventType type) {
  switch (type) {
    case EventType::turning_point: return "turning-point";
    case EventType::outer_equator: return "outer-equator";
    case EventType::inner_equator: return "inner-equator";
  }
  return "unknown";
}

Acceleration rhs_general(const SurfaceParams& p, const GeodesicState& s) {
  const MetricComponents g = metric_at(p, s.r);
  const MetricDerivatives dg = metric_derivatives_at(p, s.r);
  const double E = g.g_rr, F = g.g_phir, G = g.g_phiphi;
  const double dE = dg.dg_rr, dF = dg.dg_phir, dG = dg.dg_phiphi;
  const double det = E * G - F * F;

  const double crrr = (G * (0.5 * dE) - F * dF) / det;
  const double crpr = -F * dG / (2.0 * det);
  const double crpp = -G * dG / (2.0 * det);
  const double cprr = (E * dF - F * (0.5 * dE)) / det;
  const double cppr = E * dG / (2.0 * det);
  const double cppp = F * dG / (2.0 * det);

  Acceleration acc;
  acc.ar = -(crrr * s.ur * s.ur + 2.0 * crpr * s.ur * s.uphi +
             crpp * s.uphi * s.uphi);
  acc.aphi = -(cprr * s.ur * s.ur + 2.0 * cppr * s.ur * s.uphi +
               cppp * s.uphi * s.uphi);
  return acc;
}

Acceleration rhs_explicit_smooth(const SurfaceParams& p,
                                 const GeodesicState& s) {
  const double chi = s.r / p.b;
  const double cb = std::cos(chi), sb = std::sin(chi);
  const double R = p.a + p.b * cb;
  const double c = p.c;
  const double den = R * R + c * c * sb * sb;

  Acceleration acc;
  acc.ar = -((c * c / p.b) * cb * sb * s.ur * s.ur +
             2.0 * c * cb * R * sb * s.ur * s.uphi +
             (R * R + c * c) * R * sb * s.uphi * s.uphi) /
           den;
  acc.aphi = ((c / p.b) * sb * s.ur * s.ur + 2.0 * R * sb * s.ur * s.uphi +
              c * cb * R * sb * s.uphi * s.uphi) /
             den;
  return acc;
}

OrthonormalVelocity orthonormal_velocity(const SurfaceParams& p,
                                         const GeodesicState& s) {
  const MetricComponents g = metric_at(p, s.r);
  return {std::sqrt(g.gamma_rr) * s.ur, g.M * (s.uphi + g.M_r * s.ur)};
}

ConservedPair conserved_of(const SurfaceParams& p, const GeodesicState& s) {
  const MetricComponents g = metric_at(p, s.r);
  ConservedPair c;
  c.ell = g.g_phiphi * s.uphi + g.g_phir * s.ur;
  c.energy = 0.5 * (g.g_rr * s.ur * s.ur + 2.0 * g.g_phir * s.ur * s.uphi +
                    g.g_phiphi * s.uphi * s.uphi);
  return c;
}

GeodesicState launch(const SurfaceParams& p, const LaunchSpec& spec) {
  if (spec.energy < 0.0) fail(Errc::bad_config, "launch energy must be >= 0");
  const double speed = std::sqrt(2.0 * spec.energy);
  const double u_rhat = speed * std::cos(spec.beta);
  const double u_phihat = speed * std::sin(spec.beta);
  const MetricComponents g = metric_at(p, spec.r0);
  GeodesicState s;
  s.lambda = 0.0;
  s.r = spec.r0;
  s.phi = spec.phi0;
  s.ur = u_rhat / std::sqrt(g.gamma_rr);
  s.uphi = u_phihat / g.M - g.M_r * s.ur;
  return s;
}

double state_beta(const SurfaceParams& p, const GeodesicState& s) {
  const OrthonormalVelocity u = orthonormal_velocity(p, s);
  const double speed2 = u.u_rhat * u.u_rhat + u.u_phihat * u.u_phihat;
  if (speed2 < 1e-200)
    fail(Errc::zero_speed, "launch angle undefined for a zero-speed state");
  return std::atan2(u.u_phihat, u.u_rhat);
}

GeodesicTrace integrate(const SurfaceParams& p, const GeodesicState& start,
                        double lambda_end, const IntegrateOptions& opts) {
  if (!(lambda_end > start.lambda))
    fail(Errc::bad_config, "lambda_end must exceed the start parameter");

  GeodesicTrace trace;
  trace.initial = conserved_of(p, start);
  const double speed0 = std::sqrt(std::max(2.0 * trace.initial.energy, 0.0));
  const double den_ell =
      std::max(std::abs(trace.initial.ell),
               1e-9 * speed0 * metric_at(p, start.r).M) +
      1e-300;
  const double den_energy = std::max(trace.initial.energy, 1e-300);

  auto drift_of = [&](const Y& y, double lambda, double& dl, double& de) {
    const ConservedPair c = conserved_of(p, to_state(lambda, y));
    dl = std::abs(c.ell - trace.initial.ell) / den_ell;
    de = std::abs(c.energy - trace.initial.energy) / den_energy;
  };

  auto push_sample = [&](double lambda, const Y& y) {
    TraceSample sm;
    sm.state = to_state(lambda, y);
    sm.xyz = embed(p, y[0] / p.b, y[1]);
    drift_of(y, lambda, sm.ell_drift, sm.energy_drift);
    trace.ell_drift = std::max(trace.ell_drift, sm.ell_drift);
    trace.energy_drift = std::max(trace.energy_drift, sm.energy_drift);
    trace.samples.push_back(sm);
  };

  // event functions, all O(1)-scaled and smooth; zeros at radial turning
  // points and at the two equator families
  const double speed_scale = std::max(speed0, 1e-30);
  auto event_value = [&](int k, const Y& y) {
    switch (k) {
      case 0: return y[2] / speed_scale;               // ur = 0
      case 1: return std::sin(y[0] / (2.0 * p.b));     // r = 0 mod 2 pi b
      default: return std::cos(y[0] / (2.0 * p.b));    // r = b pi mod 2 pi b
    }
  };
  constexpr EventType kEventTypes[3] = {EventType::turning_point,
                                        EventType::outer_equator,
                                        EventType::inner_equator};
  constexpr double kArm = 1e-9;
  bool armed[3];
  double sign[3];

  Y y{start.r, start.phi, start.ur, start.uphi};
  for (int k = 0; k < 3; ++k) {
    const double g = event_value(k, y);
    armed[k] = std::abs(g) > kArm;
    sign[k] = g < 0.0 ? -1.0 : 1.0;
  }

  double lambda = start.lambda;
  push_sample(lambda, y);

  const double span = lambda_end - start.lambda;
  const double h_max =
      opts.max_step > 0.0 ? std::min(opts.max_step, span) : span;
  const double h_min = 1e-14 * std::max({1.0, std::abs(start.lambda),
                                         std::abs(lambda_end)});

  Y k1 = rhs(p, y);

  // initial step size (standard two-probe heuristic)
  double h;
  {
    auto sc = [&](int i) {
      return opts.abs_tol + opts.rel_tol * std::abs(y[i]);
    };
    double d0 = 0, dd1 = 0;
    for (int i = 0; i < 4; ++i) {
      d0 += (y[i] / sc(i)) * (y[i] / sc(i));
      dd1 += (k1[i] / sc(i)) * (k1[i] / sc(i));
    }
    d0 = std::sqrt(d0 / 4);
    dd1 = std::sqrt(dd1 / 4);
    double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    h0 = std::min(h0, h_max);
    Y y1;
    for (int i = 0; i < 4; ++i) y1[i] = y[i] + h0 * k1[i];
    Y f1 = rhs(p, y1);
    double d2 = 0;
    for (int i = 0; i < 4; ++i) {
      const double q = (f1[i] - k1[i]) / sc(i);
      d2 += q * q;
    }
    d2 = std::sqrt(d2 / 4) / h0;
    const double dm = std::max(dd1, d2);
    const double h1 =
        dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, h_max});
  }

  constexpr double beta_pi = 0.04, expo1 = 0.2 - beta_pi * 0.75, safe = 0.9;
  constexpr double facc1 = 5.0, facc2 = 0.1;  // 1/facl, 1/facr
  double facold = 1e-4;
  bool rejected = false;
  std::size_t n_steps = 0;

  while (lambda < lambda_end - 1e-14 * std::max(1.0, std::abs(lambda_end))) {
    if (++n_steps > opts.max_steps)
      fail(Errc::step_failure, "step budget exhausted");
    h = std::min(h, lambda_end - lambda);

    Y k2, k3, k4, k5, k6, k7, yt, ynew;
    auto stage = [&](Y& out, std::initializer_list<std::pair<double, const Y*>>
                                 terms) {
      for (int i = 0; i < 4; ++i) {
        double acc = 0;
        for (const auto& [w, k] : terms) acc += w * (*k)[i];
        out[i] = y[i] + h * acc;
      }
    };
    stage(yt, {{a21, &k1}});
    k2 = rhs(p, yt);
    stage(yt, {{a31, &k1}, {a32, &k2}});
    k3 = rhs(p, yt);
    stage(yt, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    k4 = rhs(p, yt);
    stage(yt, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    k5 = rhs(p, yt);
    stage(yt, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    k6 = rhs(p, yt);
    stage(ynew, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    k7 = rhs(p, ynew);

    double err = 0.0;
    bool ok = finite(ynew) && finite(k7);
    if (ok) {
      for (int i = 0; i < 4; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                               e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = opts.abs_tol +
                          opts.rel_tol * std::max(std::abs(y[i]),
                                                  std::abs(ynew[i]));
        err += (ei / sc) * (ei / sc);
      }
      err = std::sqrt(err / 4);
    } else {
      err = 1e6;
    }

    const double fac11 = std::pow(std::max(err, 1e-30), expo1);
    if (err <= 1.0) {
      // accept
      DenseSegment seg;
      seg.lambda0 = lambda;
      seg.h = h;
      for (int i = 0; i < 4; ++i) {
        const double dy = ynew[i] - y[i];
        seg.rcont[0][i] = y[i];
        seg.rcont[1][i] = dy;
        seg.rcont[2][i] = h * k1[i] - dy;
        seg.rcont[3][i] = dy - h * k7[i] - seg.rcont[2][i];
        seg.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                               d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }

      // event sweep over the accepted segment on a small subgrid
      const double lambda1 = lambda + h;
      constexpr int kSub = 4;
      for (int k = 0; k < 3; ++k) {
        double la = lambda;
        double ga = event_value(k, y);
        for (int sub = 1; sub <= kSub; ++sub) {
          const double lb = lambda + h * sub / kSub;
          const Y yb = sub == kSub ? ynew : seg.eval(lb);
          const double gb = event_value(k, yb);
          if (armed[k] && (gb < 0.0) != (sign[k] < 0.0) && gb != 0.0) {
            // bracket [la, lb]: refine by bisection on the dense output
            double lo = la, hi = lb;
            double glo = ga;
            for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double gm = event_value(k, seg.eval(mid));
              if (gm == 0.0 || (gm < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gm;
              } else {
                hi = mid;
              }
            }
            const double lstar = 0.5 * (lo + hi);
            TraceEvent ev;
            ev.type = kEventTypes[k];
            ev.lambda = lstar;
            ev.state = to_state(lstar, seg.eval(lstar));
            trace.events.push_back(ev);
            if (trace.events.size() > opts.max_events)
              fail(Errc::event_storm, "event budget exhausted");
            armed[k] = false;
            sign[k] = gb < 0.0 ? -1.0 : 1.0;
          }
          if (!armed[k] && std::abs(gb) > kArm) {
            armed[k] = true;
            sign[k] = gb < 0.0 ? -1.0 : 1.0;
          }
          la = lb;
          ga = gb;
        }
      }

      lambda = lambda1;
      y = ynew;
      k1 = k7;  // FSAL
      push_sample(lambda, y);

      facold = std::max(err, 1e-4);
      double fac = fac11 / std::pow(facold, beta_pi);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      double hnew = h / fac;
      if (rejected) hnew = std::min(hnew, h);
      h = std::min(hnew, h_max);
      rejected = false;
    } else {
      h = h / std::min(facc1, fac11 / safe);
      rejected = true;
      if (h < h_min)
        fail(Errc::step_failure, "requested tolerance unreachable");
    }
  }

  std::stable_sort(
      trace.events.begin(), trace.events.end(),
      [](const TraceEvent& a, const TraceEvent& b) { return a.lambda < b.lambda; });
  return trace;
}

}  // namespace helix
