// Serial reference loops against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "blowlab/grid.hpp"
#include "blowlab/nonlinearity.hpp"
#include "blowlab/parallel.hpp"

namespace {

using namespace blowlab;

std::vector<double> field(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + std::sin(0.001 * double(i));
  return v;
}

template <bool Omp>
void BM_source_stage(benchmark::State& state) {
  const auto u = field(state.range(0));
  std::vector<double> out(u.size());
  const auto F = Nonlinearity::power(1.0, 2.5);
  for (auto _ : state) {
    if constexpr (Omp)
      par::omp::source_stage(u, F, 0.01, out);
    else
      par::serial::source_stage(u, F, 0.01, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Omp>
void BM_scale_spectrum(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::vector<par::cplx> in(n, {1.0, -0.5}), out(n);
  const auto mult = field(n);
  for (auto _ : state) {
    if constexpr (Omp)
      par::omp::scale_spectrum(in, mult, out);
    else
      par::serial::scale_spectrum(in, mult, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Omp>
void BM_exp_multiplier(benchmark::State& state) {
  const auto sigma = field(state.range(0));
  std::vector<double> out(sigma.size());
  for (auto _ : state) {
    if constexpr (Omp)
      par::omp::exp_multiplier(sigma, -0.3, out);
    else
      par::serial::exp_multiplier(sigma, -0.3, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Omp>
void BM_sum(benchmark::State& state) {
  const auto v = field(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Omp ? par::omp::sum(v) : par::serial::sum(v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Omp>
void BM_periodic_convolution(benchmark::State& state) {
  const Mesh mesh{1, 8.0, static_cast<int>(state.range(0))};
  const auto w = field(mesh.size());
  const auto u = field(mesh.size());
  std::vector<double> out(mesh.size());
  for (auto _ : state) {
    if constexpr (Omp)
      par::omp::periodic_convolution(mesh, w, u, out);
    else
      par::serial::periodic_convolution(mesh, w, u, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_source_stage<false>)->Name("source_stage/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_source_stage<true>)->Name("source_stage/omp")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_scale_spectrum<false>)->Name("scale_spectrum/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_scale_spectrum<true>)->Name("scale_spectrum/omp")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_exp_multiplier<false>)->Name("exp_multiplier/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_exp_multiplier<true>)->Name("exp_multiplier/omp")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_sum<false>)->Name("sum/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_sum<true>)->Name("sum/omp")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_periodic_convolution<false>)->Name("periodic_convolution/serial")->Range(256, 4096);
BENCHMARK(BM_periodic_convolution<true>)->Name("periodic_convolution/omp")->Range(256, 4096);

BENCHMARK_MAIN();
