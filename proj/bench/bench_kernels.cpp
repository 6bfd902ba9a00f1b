// Serial reference kernels vs the OpenMP versions.
//   ./build/bench_kernels --benchmark_filter=overlaps
#include <benchmark/benchmark.h>

#include <random>

#include "qws/kernels.hpp"

using namespace qws;

namespace {

// Dense random state on [-n, n].
CompositeState make_state(Position n) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> g;
  RawState raw;
  for (Position m = -n; m <= n; ++m) raw[m] = {cplx(g(gen), g(gen)), cplx(g(gen), g(gen))};
  double norm = 0.0;
  for (const auto& [m, v] : raw) norm += std::norm(v[0]) + std::norm(v[1]);
  for (auto& [m, v] : raw) {
    v[0] /= std::sqrt(norm);
    v[1] /= std::sqrt(norm);
  }
  return canonicalize(raw);
}

template <kernels::OverlapFn F>
void overlaps(benchmark::State& st) {
  const auto u = make_state(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(F(u));
  st.SetComplexityN(st.range(0));
}

template <kernels::SampleFn F>
void samples(benchmark::State& st) {
  const auto u = make_state(st.range(0));
  const std::size_t k = 4 * st.range(0) + 4;
  for (auto _ : st) benchmark::DoNotOptimize(F(u, k));
  st.SetItemsProcessed(st.iterations() * k);
}

template <kernels::DftFn F>
void dft(benchmark::State& st) {
  const Position n = st.range(0);
  const auto prof = kernels::serial::sample_azimuths(make_state(n), 4 * n + 4);
  for (auto _ : st) benchmark::DoNotOptimize(F(prof, -n, n));
  st.SetItemsProcessed(st.iterations() * prof.size());
}

}  // namespace

BENCHMARK(overlaps<kernels::serial::shift_overlaps>)->Name("overlaps/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(overlaps<kernels::parallel::shift_overlaps>)->Name("overlaps/omp")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(samples<kernels::serial::sample_azimuths>)->Name("samples/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(samples<kernels::parallel::sample_azimuths>)->Name("samples/omp")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(dft<kernels::serial::azimuthal_dft>)->Name("dft/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(dft<kernels::parallel::azimuthal_dft>)->Name("dft/omp")->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
