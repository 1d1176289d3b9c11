#include <benchmark/benchmark.h>

#include "energylab/constructors.hpp"
#include "energylab/energy.hpp"
#include "energylab/gowers.hpp"
#include "energylab/setfun.hpp"
#include "energylab/verify.hpp"

using namespace energylab;

namespace {

GSet cyclic_set(std::int64_t n, double density) {
  return random_set(Group::make({static_cast<std::uint32_t>(n)}), density, 11);
}

GSet cube_set(std::int64_t dim, double density) {
  return random_set(Group::make(std::vector<std::uint32_t>(static_cast<std::size_t>(dim), 2)), density, 11);
}

void BM_ConvolveDirect(benchmark::State& state) {
  const DenseFunc f = DenseFunc::indicator(cyclic_set(state.range(0), 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, f, ConvolutionPath::Direct));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(4)->Range(256, 16384);

void BM_ConvolveTransform(benchmark::State& state) {
  const DenseFunc f = DenseFunc::indicator(cyclic_set(state.range(0), 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, f, ConvolutionPath::Transform));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveTransform)->RangeMultiplier(4)->Range(256, 1 << 18);

// Prime length, so the transform goes through the chirp route.
void BM_ConvolveTransformPrime(benchmark::State& state) {
  const DenseFunc f = DenseFunc::indicator(cyclic_set(state.range(0), 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, f, ConvolutionPath::Transform));
}
BENCHMARK(BM_ConvolveTransformPrime)->Arg(1009)->Arg(16381)->Arg(65521);

void BM_EnergyCube(benchmark::State& state) {
  const GSet a = cube_set(state.range(0), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(energy_k(a, 3));
}
BENCHMARK(BM_EnergyCube)->DenseRange(8, 16, 4);

void BM_GowersU3(benchmark::State& state) {
  const GSet a = cube_set(state.range(0), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(gowers_u(a, 3));
}
BENCHMARK(BM_GowersU3)->DenseRange(6, 10, 2);

void BM_DeltaSumset(benchmark::State& state) {
  const GSet a = cyclic_set(state.range(0), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(delta_sumset_size(a, 2, Sign::Minus));
}
BENCHMARK(BM_DeltaSumset)->Arg(101)->Arg(256)->Arg(1024);

void BM_IdentitySuite(benchmark::State& state) {
  const GSet a = cyclic_set(101, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(run_identity_suite(a));
}
BENCHMARK(BM_IdentitySuite)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
