// Serial reference loops against the OpenMP kernels, plus one full Strang step.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nlkg/data.hpp"
#include "nlkg/kernels.hpp"
#include "nlkg/propagator.hpp"

using namespace nlkg;

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(rng);
  return v;
}

template <void (*Power)(std::span<const double>, double, std::span<double>)>
void BM_power(benchmark::State& state) {
  const auto u = noise(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(u.size());
  for (auto _ : state) {
    Power(u, 4.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <double (*Moment)(std::span<const double>, double, int, double)>
void BM_moment(benchmark::State& state) {
  const auto u = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Moment(u, 1e-3, 2, 5.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <double (*Product)(std::span<const double>, std::span<const double>, double, int)>
void BM_product(benchmark::State& state) {
  const auto a = noise(static_cast<std::size_t>(state.range(0))), b = noise(a.size());
  for (auto _ : state) benchmark::DoNotOptimize(Product(a, b, 1e-3, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_strang_step(benchmark::State& state) {
  RadialGrid g(30.0, static_cast<std::size_t>(state.range(0)));
  State s = gaussian_data(g, 1.5);
  for (auto _ : state) s = strang_step(s, 1e-3, 4.0, 2);
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_power<kernels::serial::power_nonlinearity>)->Name("power/serial")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_power<kernels::power_nonlinearity>)->Name("power/omp")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_moment<kernels::serial::radial_moment>)->Name("moment/serial")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_moment<kernels::radial_moment>)->Name("moment/omp")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_product<kernels::serial::radial_product>)->Name("product/serial")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_product<kernels::radial_product>)->Name("product/omp")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_strang_step)->Name("strang_step")->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
