#include "mms/generate.hpp"
#include "mms/oracle.hpp"
#include "mms/solver.hpp"

#include <benchmark/benchmark.h>

namespace {

auto instance(std::size_t n, std::size_t m, mms::Profile profile, std::uint64_t seed) -> mms::Instance {
  return mms::generate(mms::GenSpec{n, m, profile, -9, 9, seed});
}

void BM_Guarantee(benchmark::State& state) {
  auto m = static_cast<std::size_t>(state.range(0));
  auto inst = instance(4, m, mms::Profile::mixed, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::mms_guarantee(inst, 0));
  }
}
BENCHMARK(BM_Guarantee)->DenseRange(6, 12, 2);

void BM_Solve(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<mms::Instance> pool;
  for (std::uint64_t seed = 0; seed < 32; ++seed) pool.push_back(instance(n, n + 5, mms::Profile::goods, seed));
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::solve(pool[next++ % pool.size()]));
  }
}
BENCHMARK(BM_Solve)->DenseRange(2, 5);

void BM_SolveChores(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<mms::Instance> pool;
  for (std::uint64_t seed = 0; seed < 32; ++seed) pool.push_back(instance(n, n + 5, mms::Profile::chores, seed));
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::solve(pool[next++ % pool.size()]));
  }
}
BENCHMARK(BM_SolveChores)->DenseRange(2, 5);

void BM_FallbackSearch(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto inst = instance(n, n + 5, mms::Profile::mixed, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mms::fallback_search(inst));
  }
}
BENCHMARK(BM_FallbackSearch)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();
