#include <benchmark/benchmark.h>

#include "qtt/braid.hpp"
#include "qtt/cg.hpp"
#include "qtt/qgroup.hpp"
#include "qtt/sampling.hpp"

using namespace qtt;

namespace {

const StandardModuleSpec kV1{{1.3, 0.2}, {0.8, 0.3}, {1.1, -0.2}, {0.9, 0.1}};
const StandardModuleSpec kV2{{0.7, -0.4}, {1.2, -0.1}, {0.95, 0.3}, {1.05, -0.15}};
const StandardModuleSpec kV3{{1.1, 0.5}, {0.9, -0.2}, {1.2, 0.1}, {0.8, -0.3}};

void BM_Presentation(benchmark::State& st) {
  RootContext ctx(int(st.range(0)));
  auto g = build_generators(ctx);
  for (auto _ : st) benchmark::DoNotOptimize(verify_presentation(g));
}
BENCHMARK(BM_Presentation)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_BuildRep(benchmark::State& st) {
  RootContext ctx(int(st.range(0)));
  Sampler s(1);
  auto spec = s.cyclic();
  for (auto _ : st) benchmark::DoNotOptimize(build_rep(ctx, spec));
}
BENCHMARK(BM_BuildRep)->Arg(3)->Arg(7);

void BM_CGDecompose(benchmark::State& st) {
  RootContext ctx(int(st.range(0)));
  Sampler s(2);
  auto r1 = build_rep(ctx, s.cyclic()), r2 = build_rep(ctx, s.cyclic());
  for (auto _ : st) benchmark::DoNotOptimize(cg_decompose(ctx, r1, r2));
}
BENCHMARK(BM_CGDecompose)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_ClosedFormulaR(benchmark::State& st) {
  RootContext ctx(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(closed_formula_R(ctx, kV1, kV2));
}
BENCHMARK(BM_ClosedFormulaR)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_IntertwinerResidual(benchmark::State& st) {
  RootContext ctx(int(st.range(0)));
  auto R = closed_formula_R(ctx, kV1, kV2);
  for (auto _ : st) benchmark::DoNotOptimize(intertwiner_residual(ctx, R));
}
BENCHMARK(BM_IntertwinerResidual)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_YangBaxter(benchmark::State& st) {
  RootContext ctx(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(yang_baxter_triple(ctx, kV1, kV2, kV3));
}
BENCHMARK(BM_YangBaxter)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_JonesSmoke(benchmark::State& st) {
  RootContext ctx(3);
  for (auto _ : st) benchmark::DoNotOptimize(jones_smoke(ctx, "trefoil"));
}
BENCHMARK(BM_JonesSmoke)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
