#include "helix/export.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "helix/quadrature.hpp"
#include "text_format.hpp"

namespace helix {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kCsvDigits = 17;

std::string csv(double v) { return fmt_g(v, kCsvDigits); }
}  // namespace

void write_geodesic_csv(std::ostream& os, const SurfaceParams& p,
                        const GeodesicTrace& trace) {
  os << "lambda,r,chi_wrapped,phi,x,y,z,ur,uphi,ell_drift,E_drift\n";
  for (const TraceSample& s : trace.samples) {
    os << csv(s.state.lambda) << ',' << csv(s.state.r) << ','
       << csv(wrap_angle(s.state.r / p.b)) << ',' << csv(s.state.phi) << ','
       << csv(s.xyz.x) << ',' << csv(s.xyz.y) << ',' << csv(s.xyz.z) << ','
       << csv(s.state.ur) << ',' << csv(s.state.uphi) << ','
       << csv(s.ell_drift) << ',' << csv(s.energy_drift) << '\n';
  }
}

std::string geodesic_summary_json(const SurfaceParams& p,
                                  const GeodesicTrace& trace,
                                  const OrbitAnalysis& analysis) {
  nlohmann::json j;
  j["surface"] = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d},
                  {"m", p.m}, {"eta", p.eta}};
  j["conserved"] = {{"ell", trace.initial.ell},
                    {"energy", trace.initial.energy}};
  j["drift"] = {{"ell", trace.ell_drift}, {"energy", trace.energy_drift}};
  j["classification"] = orbit_kind_name(analysis.kind);
  j["crosses_inner_equator"] = analysis.crosses_inner_equator;
  if (analysis.turning) {
    j["turning"] = {{"r_plus", analysis.turning->r_plus},
                    {"r_minus", analysis.turning->r_minus}};
  }
  nlohmann::json eqs = nlohmann::json::array();
  for (const Equilibrium& eq : analysis.equilibria) {
    eqs.push_back({{"r", eq.r_star},
                   {"stability",
                    eq.stability == Stability::stable ? "stable" : "unstable"},
                   {"potential", eq.potential}});
  }
  j["equilibria"] = eqs;
  nlohmann::json evs = nlohmann::json::array();
  for (const TraceEvent& ev : trace.events) {
    evs.push_back({{"type", event_type_name(ev.type)},
                   {"lambda", ev.lambda},
                   {"r", ev.state.r},
                   {"phi", ev.state.phi}});
  }
  j["events"] = evs;
  j["samples"] = trace.samples.size();
  j["lambda_end"] = trace.samples.empty()
                        ? 0.0
                        : trace.samples.back().state.lambda;
  return j.dump(2) + "\n";
}

void write_potential_csv(std::ostream& os, const SurfaceParams& p, double ell,
                         int samples) {
  if (samples < 2) fail(Errc::bad_config, "need at least 2 samples");
  os << "r,V,Vprime,K\n";
  const double half = kPi * p.b;
  for (int i = 0; i < samples; ++i) {
    const double r = -half + 2.0 * half * i / (samples - 1);
    os << csv(r) << ',' << csv(effective_potential(p, ell, r)) << ','
       << csv(potential_derivative(p, ell, r)) << ','
       << csv(gaussian_curvature(p, r)) << '\n';
  }
  for (const Equilibrium& eq : find_equilibria(p, ell)) {
    os << "# equilibrium," << csv(eq.r_star) << ','
       << (eq.stability == Stability::stable ? "stable" : "unstable") << ','
       << csv(eq.potential) << '\n';
  }
}

void write_curvature_csv(std::ostream& os, const SurfaceParams& p,
                         int samples) {
  if (samples < 2) fail(Errc::bad_config, "need at least 2 samples");
  os << "r,K\n";
  const double half = kPi * p.b;
  for (int i = 0; i < samples; ++i) {
    const double r = -half + 2.0 * half * i / (samples - 1);
    os << csv(r) << ',' << csv(gaussian_curvature(p, r)) << '\n';
  }
}

std::vector<SweepRow> run_sweep(const SurfaceParams& p, const SweepSpec& spec,
                                double fixed_energy, double fixed_ell) {
  if (spec.count < 1 || !(spec.beta_min > 0.0) ||
      !(spec.beta_max <= kPi / 2 + 1e-12) || !(spec.beta_min <= spec.beta_max))
    fail(Errc::bad_config, "sweep needs 0 < beta_min <= beta_max <= pi/2");

  const double m0 = metric_at(p, 0.0).M;
  auto row_of = [&](int i) {
    SweepRow row{};
    row.beta = spec.count == 1
                   ? spec.beta_min
                   : spec.beta_min + (spec.beta_max - spec.beta_min) * i /
                                         (spec.count - 1);
    const double sb = std::sin(row.beta);
    if (spec.fix_ell) {
      row.ell = fixed_ell;
      row.energy = fixed_ell * fixed_ell / (2.0 * m0 * m0 * sb * sb);
    } else {
      row.energy = fixed_energy;
      row.ell = std::sqrt(2.0 * fixed_energy) * m0 * sb;
    }
    const ConservedPair cp{row.ell, row.energy};
    const OrbitAnalysis analysis = classify_orbit(p, cp, 0.0);
    row.kind = analysis.kind;
    row.r_plus = analysis.turning
                     ? analysis.turning->r_plus
                     : std::numeric_limits<double>::quiet_NaN();
    row.half_period = std::numeric_limits<double>::quiet_NaN();
    if (analysis.kind == OrbitKind::bound && analysis.turning &&
        analysis.turning->r_plus > analysis.turning->r_minus) {
      row.half_period = lambda_of_r(p, cp, analysis.turning->r_minus,
                                    analysis.turning->r_plus);
    }
    return row;
  };

  // fan the independent rows across the hardware, merge in beta order
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int stride =
      static_cast<int>((spec.count + static_cast<int>(hw) - 1) / hw);
  std::vector<SweepRow> rows(spec.count);
  std::vector<std::future<void>> work;
  for (int lo = 0; lo < spec.count; lo += stride) {
    const int hi = std::min(spec.count, lo + stride);
    work.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (int i = lo; i < hi; ++i) rows[i] = row_of(i);
    }));
  }
  for (auto& w : work) w.get();
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "beta,ell,E,kind,r_plus,half_period_lambda\n";
  for (const SweepRow& row : rows) {
    os << csv(row.beta) << ',' << csv(row.ell) << ',' << csv(row.energy)
       << ',' << orbit_kind_name(row.kind) << ',' << csv(row.r_plus) << ','
       << csv(row.half_period) << '\n';
  }
}

std::string area_report_json(const SurfaceParams& p, double phi_span,
                             double area) {
  nlohmann::json j;
  j["surface"] = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d},
                  {"m", p.m}, {"eta", p.eta}};
  j["phi_span"] = phi_span;
  j["area"] = area;
  return j.dump(2) + "\n";
}

}  // namespace helix
