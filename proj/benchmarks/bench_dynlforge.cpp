#include <benchmark/benchmark.h>

#include "dynlforge/catalog.hpp"
#include "dynlforge/duality.hpp"
#include "dynlforge/suites.hpp"

using namespace dynlforge;

namespace {

const char* setup_name(int i) {
  static const auto names = catalog_names();
  return names[static_cast<std::size_t>(i)].c_str();
}

void BM_LcanEval(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get(setup_name(static_cast<int>(state.range(0))));
  const DoubleAlgebra d(g);
  const VecD p = ball_grid(g.nl(), 0.8, 1, 1)[0];
  for (auto _ : state) benchmark::DoNotOptimize(lcan_matrix(d, p));
  state.SetLabel(g.name);
}
BENCHMARK(BM_LcanEval)->DenseRange(0, 4);

void BM_CdybeResidual(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get(setup_name(static_cast<int>(state.range(0))));
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  const VecD p = ball_grid(g.nl(), 0.8, 1, 1)[0];
  for (auto _ : state) benchmark::DoNotOptimize(cdybe_residual(d, l, p));
  state.SetLabel(g.name);
}
BENCHMARK(BM_CdybeResidual)->DenseRange(0, 4);

void BM_JetRecursion(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  const DoubleAlgebra d(g);
  const VecD p0 = ball_grid(g.nl(), 1.0, 1, 2)[0];
  for (auto _ : state) benchmark::DoNotOptimize(lcan_jets(d, p0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_JetRecursion)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SeriesJet(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  const VecD p0 = ball_grid(g.nl(), 1.0, 1, 2)[0];
  for (auto _ : state) benchmark::DoNotOptimize(evaluator_jet(l, p0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SeriesJet)->Arg(4)->Arg(8);

void BM_LinkResidual(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get(setup_name(static_cast<int>(state.range(0))));
  const LinkContext ctx(g);
  const VecD p = ball_grid(g.nl(), 0.8, 1, 3)[0];
  for (auto _ : state) benchmark::DoNotOptimize(ctx.evaluate(p));
  state.SetLabel(g.name);
}
BENCHMARK(BM_LinkResidual)->DenseRange(0, 4);

void BM_MorphismResidual(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get("heisenberg-degenerate");
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  SplitMix64 rng(4);
  const SectionPoly s1 = random_section(d, 2, rng), s2 = random_section(d, 2, rng);
  const VecD p = ball_grid(g.nl(), 0.8, 1, 3)[0];
  for (auto _ : state) benchmark::DoNotOptimize(algebroid_morphism_residual(d, l, s1, s2, p));
}
BENCHMARK(BM_MorphismResidual);

void BM_ScalarOde(benchmark::State& state) {
  // Memoized series make repeated calls cheap; the first call dominates.
  for (auto _ : state) benchmark::DoNotOptimize(scalar_ode_residual("FGH", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ScalarOde)->Arg(24)->Arg(48);

void BM_LcanSuite(benchmark::State& state) {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  SuiteOptions opt;
  opt.grid_radius = 1.0;
  opt.grid_count = 40;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(g, "lcan", opt));
}
BENCHMARK(BM_LcanSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
