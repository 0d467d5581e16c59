// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "traitfront/hj.hpp"
#include "traitfront/pde.hpp"
#include "traitfront/spectral.hpp"

using namespace traitfront;

namespace {

SimConfig pde_config(TimeScheme scheme) {
  SimConfig cfg;
  cfg.space = SpaceGrid(-10.0, 90.0, 1001);
  cfg.theta = ThetaGrid(1.0, 2.0, 41);
  cfg.scheme = scheme;
  return cfg;
}

Field random_field(const SimConfig& cfg) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Field f(cfg.space, cfg.theta);
  for (double& v : f.values()) v = u(rng);
  return f;
}

const HTable& table() {
  static const HTable t = [] {
    const ModelParams p;
    return build_h_table(10.0, 201, p, ThetaGrid::over(p, 81));
  }();
  return t;
}

HJField hj_field(double dx) {
  const SpaceGrid g = SpaceGrid::with_spacing(-12.0, 12.0, dx);
  return cutoff_initial(IntervalSet({{-1.0, 1.0}}), 40.0, g);
}

void BM_PdeStep(benchmark::State& state) {
  const SimConfig cfg = pde_config(static_cast<TimeScheme>(state.range(0)));
  const Field f = random_field(cfg);
  const double dt = stable_dt(cfg);
  Stepper stepper(cfg, dt);
  Field out = f;
  for (auto _ : state) {
    stepper.advance(f, out);
    benchmark::DoNotOptimize(out.values().data());
  }
}

void BM_PdeStepReference(benchmark::State& state) {
  const SimConfig cfg = pde_config(static_cast<TimeScheme>(state.range(0)));
  const Field f = random_field(cfg);
  const double dt = stable_dt(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(reference::step(f, dt, cfg));
}

void BM_HjStep(benchmark::State& state) {
  const HJField f = hj_field(0.01);
  const double dt = 0.9 * max_stable_dt(f, table());
  for (auto _ : state) benchmark::DoNotOptimize(hj_step(f, dt, table(), NumericalHamiltonian::Godunov));
}

void BM_HjStepReference(benchmark::State& state) {
  const HJField f = hj_field(0.01);
  const double dt = 0.9 * max_stable_dt(f, table());
  for (auto _ : state) benchmark::DoNotOptimize(reference::hj_step(f, dt, table(), NumericalHamiltonian::Godunov));
}

void BM_SemiLagrangian(benchmark::State& state) {
  const HJField f = hj_field(0.05);
  const SemiLagrangianStep sl(table(), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(sl.advance(f, 0.025));
}

void BM_SemiLagrangianReference(benchmark::State& state) {
  const HJField f = hj_field(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(reference::hj_step_semi_lagrangian(f, 0.025, table(), 0.05));
}

}  // namespace

BENCHMARK(BM_PdeStep)->Arg(static_cast<int>(TimeScheme::Explicit))->Arg(static_cast<int>(TimeScheme::ImexThetaImplicit));
BENCHMARK(BM_PdeStepReference)
    ->Arg(static_cast<int>(TimeScheme::Explicit))
    ->Arg(static_cast<int>(TimeScheme::ImexThetaImplicit));
BENCHMARK(BM_HjStep);
BENCHMARK(BM_HjStepReference);
BENCHMARK(BM_SemiLagrangian);
BENCHMARK(BM_SemiLagrangianReference);

BENCHMARK_MAIN();
