#include <benchmark/benchmark.h>

#include "rotlab/circle.hpp"
#include "rotlab/cohomology.hpp"
#include "rotlab/cover.hpp"
#include "rotlab/theorem.hpp"

namespace {

using namespace rotlab;

void BM_FloorCocycle(benchmark::State& state) {
  cohomology::Integer n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cohomology::floor_cocycle(0.3819660112501051, n, n + 7));
    n = (n * 7919 + 13) % 1'000'003;
  }
}
BENCHMARK(BM_FloorCocycle);

void BM_ExtractClass(benchmark::State& state) {
  const auto c = cohomology::floor_cocycle_cochain(0.41421356);
  for (auto _ : state) benchmark::DoNotOptimize(cohomology::extract_class(c, state.range(0)));
}
BENCHMARK(BM_ExtractClass)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMicrosecond);

void BM_GhysCheckArnold(benchmark::State& state) {
  const circle::CircleCoverElement g(circle::CircleLift::arnold(0.4, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(circle::ghys_check(g));
}
BENCHMARK(BM_GhysCheckArnold)->Unit(benchmark::kMillisecond);

void BM_CanonicalPath(benchmark::State& state) {
  const auto g = sp::random_symplectic(static_cast<int>(state.range(0)), 42, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sp::canonical_path(g));
}
BENCHMARK(BM_CanonicalPath)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_PowerSequence(benchmark::State& state) {
  const auto a = sp::canonical_path(sp::random_symplectic(2, 42, 0.5));
  for (auto _ : state) {
    sp::PowerSequence powers(a);
    benchmark::DoNotOptimize(powers.eta(state.range(0)));
  }
}
BENCHMARK(BM_PowerSequence)->Arg(128)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_MainTheoremCheck(benchmark::State& state) {
  const auto g = sp::random_symplectic(static_cast<int>(state.range(0)), 42, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sp::main_theorem_check(g));
}
BENCHMARK(BM_MainTheoremCheck)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
