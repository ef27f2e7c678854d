#include <benchmark/benchmark.h>

#include <qzeno/scenarios.hpp>

using namespace qzeno;

namespace {

void bm_mat_exp(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  std::mt19937_64 rng(7);
  // exp(-iH): the anti-hermitian fast path every propagator step takes.
  const ComplexMatrix g =
      Complex(0, -1) * random_hermitian(dim, rng).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp(g));
  state.SetComplexityN(dim);
}
BENCHMARK(bm_mat_exp)->Arg(4)->Arg(16)->Arg(64)->Complexity();

void bm_chain_operator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 1);
  const ProjectorFamily fam = m.family(1.0);
  const MeasurementSchedule sched(0.0, 1.0, n);
  const HistoryOutcome h = HistoryOutcome::all_found(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(chain_operator(fam, m.h(), sched, h));
  state.SetComplexityN(n);
}
BENCHMARK(bm_chain_operator)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void bm_solve_chain_ode(benchmark::State& state) {
  SpinFamilyParams params;
  params.alpha = 0.3;
  params.theta = [](double t) { return 0.7 * t; };
  params.theta_dot = [](double) { return 0.7; };
  const HeisenbergFamily heis(spin_family(params, 0.0, 1.0),
                              spin_hamiltonian(params.alpha));
  OdeConfig cfg;
  cfg.step_count = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve_chain_ode(heis, Branch::found, 0.0, 1.0, cfg));
  state.SetComplexityN(cfg.step_count);
}
BENCHMARK(bm_solve_chain_ode)->Arg(250)->Arg(1000)->Arg(4000)->Complexity();

void bm_dyson_terms(benchmark::State& state) {
  SpinFamilyParams params;
  params.alpha = 0.3;
  params.theta = [](double t) { return 0.7 * t; };
  params.theta_dot = [](double) { return 0.7; };
  const HeisenbergFamily heis(spin_family(params, 0.0, 1.0),
                              spin_hamiltonian(params.alpha));
  DysonTruncation trunc;
  trunc.order = 4;
  trunc.quadrature_points = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dyson_terms(heis, Branch::complement, 0.0, 0.5, trunc));
  state.SetComplexityN(trunc.quadrature_points);
}
BENCHMARK(bm_dyson_terms)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void bm_solve_steering(benchmark::State& state) {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 1);
  OdeConfig cfg;
  cfg.step_count = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_steering(m, 0.0, 1.0, cfg));
  state.SetComplexityN(cfg.step_count);
}
BENCHMARK(bm_solve_steering)->Arg(250)->Arg(1000)->Arg(4000)->Complexity();

void bm_vn_steering(benchmark::State& state) {
  ComplexVector e0 = ComplexVector::Zero(2), e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  const SteeringPlan plan(StateVector(e0), StateVector(e1),
                          static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(vn_steering_run(plan));
  state.SetComplexityN(plan.k);
}
BENCHMARK(bm_vn_steering)->Arg(10)->Arg(100)->Arg(1000)->Complexity();

}  // namespace

BENCHMARK_MAIN();
