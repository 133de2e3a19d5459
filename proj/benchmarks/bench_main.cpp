#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "thinfilm/experiment.hpp"

using namespace thinfilm;

namespace {

Field film(const Grid& g) {
  return g.sample([](double x) { return 3.0 + 0.01 * std::cos(std::numbers::pi * x / 10); });
}

void BM_Rhs(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Grid g(200.0, n);
  const State s{0.0, film(g)};
  const auto model = FluidModel::power_law(1.5);
  const Force f = Force::time_dependent(ExpDecay{1.0}, CosineProfile{1.0, 0.01, 10.0}, 200.0);
  for (auto _ : st) benchmark::DoNotOptimize(rhs(s, g, model, f));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Rhs)->Arg(200)->Arg(400)->Arg(800);

// Fixed 200-step runs; reports steps per second for each scheme.
void BM_Steps(benchmark::State& st) {
  const bool implicit = st.range(0) == 1;
  const Grid g(200.0, 400);
  const auto model = FluidModel::power_law(implicit ? 0.5 : 1.5);
  const Force f = Force::time_dependent(ExpDecay{1.0}, CosineProfile{1.0, 0.01, 10.0}, 200.0);
  StepControl c;
  c.scheme = implicit ? Scheme::SemiImplicit : Scheme::Explicit;
  c.t_end = 1.0;
  c.record_every = 1.0;
  c.max_steps = 200;
  std::int64_t steps = 0;
  for (auto _ : st) {
    try {
      advance(State{0.0, film(g)}, g, model, f, c);
    } catch (const SolverAbort&) {
      steps += 200;  // the step budget ends the run
    }
  }
  st.SetItemsProcessed(steps);
  st.SetLabel(implicit ? "semi-implicit" : "explicit");
}
BENCHMARK(BM_Steps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Example81(benchmark::State& st) {
  ExperimentConfig c = preset("example-8.1");
  c.control.t_end = 1.0;
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(c));
}
BENCHMARK(BM_Example81)->Unit(benchmark::kMillisecond);

void BM_LemmaSuite(benchmark::State& st) {
  const auto kind = static_cast<LemmaKind>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(run_lemma_suite(kind, 1, 20));
  st.SetLabel(to_string(kind));
}
BENCHMARK(BM_LemmaSuite)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
