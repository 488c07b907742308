#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "helix/dynamics.hpp"
#include "helix/integrator.hpp"
#include "helix/mesh.hpp"
#include "helix/quadrature.hpp"
#include "helix/surface.hpp"

namespace {

using namespace helix;

constexpr double kPi = std::numbers::pi;

SurfaceParams smooth() { return validate_params(2.0, 1.0, 0.8, 0.0, 0); }
SurfaceParams ridged() { return validate_params(1.5, 1.0, 0.8, 0.05, 10); }

void BM_metric(benchmark::State& state) {
  SurfaceParams p = ridged();
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_at(p, r));
    r += 1e-3;
  }
}
BENCHMARK(BM_metric);

void BM_metric_derivatives(benchmark::State& state) {
  SurfaceParams p = ridged();
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_derivatives_at(p, r));
    r += 1e-3;
  }
}
BENCHMARK(BM_metric_derivatives);

void BM_rhs_general(benchmark::State& state) {
  SurfaceParams p = ridged();
  GeodesicState s;
  s.r = 0.4;
  s.ur = 0.3;
  s.uphi = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rhs_general(p, s));
    s.r += 1e-3;
  }
}
BENCHMARK(BM_rhs_general);

void BM_rhs_explicit(benchmark::State& state) {
  SurfaceParams p = smooth();
  GeodesicState s;
  s.r = 0.4;
  s.ur = 0.3;
  s.uphi = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rhs_explicit_smooth(p, s));
    s.r += 1e-3;
  }
}
BENCHMARK(BM_rhs_explicit);

void BM_curvature(benchmark::State& state) {
  SurfaceParams p = ridged();
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_curvature(p, r));
    r += 1e-3;
  }
}
BENCHMARK(BM_curvature);

void BM_integrate_unit_lambda(benchmark::State& state) {
  SurfaceParams p = ridged();
  GeodesicState s0 = launch(p, {0.0, 0.0, 1.1, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p, s0, 1.0));
  }
}
BENCHMARK(BM_integrate_unit_lambda);

void BM_half_period_quadrature(benchmark::State& state) {
  SurfaceParams p = smooth();
  ConservedPair con{1.0, 0.2};
  auto tp = turning_points(p, con);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lambda_of_r(p, con, tp->r_minus, tp->r_plus));
  }
}
BENCHMARK(BM_half_period_quadrature);

void BM_surface_area(benchmark::State& state) {
  SurfaceParams p = ridged();
  for (auto _ : state) {
    benchmark::DoNotOptimize(surface_area(p, 2 * kPi));
  }
}
BENCHMARK(BM_surface_area);

void BM_build_mesh(benchmark::State& state) {
  SurfaceParams p = ridged();
  MeshSpec spec{64, 64, 2.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mesh(p, spec));
  }
}
BENCHMARK(BM_build_mesh);

}  // namespace

BENCHMARK_MAIN();
