#include <benchmark/benchmark.h>

#include <cmath>

#include <swim/control.hpp>
#include <swim/energy.hpp>
#include <swim/parallel.hpp>
#include <swim/potential.hpp>

using namespace swim;

namespace {

const RealShape kShape{{0.3, 0.5, 0.7}, 1e-2};
const BodyParams kParams;

void flux_projection(benchmark::State& state, bool parallel) {
  set_parallel(parallel);
  const auto g = [](double s) {
    return std::sin(3.0 * s) + 0.3 * std::cos(11.0 * s);
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(flux_from_function(g, 128, 4096));
  set_parallel(true);
}

void inertia_quadrature(benchmark::State& state, bool parallel) {
  set_parallel(parallel);
  const ShapeCoeffs c = coeffs_from_real(kShape);
  for (auto _ : state)
    benchmark::DoNotOptimize(body_inertia(c, kParams, 128, 512));
  set_parallel(true);
}

void metric_assembly(benchmark::State& state, bool parallel) {
  set_parallel(parallel);
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_real(kShape, kParams));
  set_parallel(true);
}

void rank_scan(benchmark::State& state, bool parallel) {
  set_parallel(parallel);
  const AffineSystem sys = swimmer_fields_with_impulse(kParams, 1e-2);
  ScanOptions so;
  so.lo = Eigen::VectorXd::Constant(9, 0.1);
  so.hi = Eigen::VectorXd::Constant(9, 0.9);
  so.n_samples = 512;
  for (auto _ : state)
    benchmark::DoNotOptimize(accessibility_scan(sys, kParams, 1e-2, so));
  set_parallel(true);
}

}  // namespace

BENCHMARK_CAPTURE(flux_projection, serial, false);
BENCHMARK_CAPTURE(flux_projection, parallel, true);
BENCHMARK_CAPTURE(inertia_quadrature, serial, false);
BENCHMARK_CAPTURE(inertia_quadrature, parallel, true);
BENCHMARK_CAPTURE(metric_assembly, serial, false);
BENCHMARK_CAPTURE(metric_assembly, parallel, true);
BENCHMARK_CAPTURE(rank_scan, serial, false);
BENCHMARK_CAPTURE(rank_scan, parallel, true);

BENCHMARK_MAIN();
