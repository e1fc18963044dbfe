#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "virial_lab/hartree_kernels.hpp"
#include "virial_lab/special_solutions.hpp"

using namespace virial_lab;

namespace {

struct Inputs {
  Grid g;
  RealField rho, phi, phi_x;
  std::vector<double> kernel;

  explicit Inputs(std::size_t n)
      : g(40.0, n),
        rho(g),
        phi(sample_real(g, [](double x) { return 2.0 * std::tanh(x / 2.0); })),
        phi_x(sample_real(g, [](double x) { return std::pow(1.0 / std::cosh(x / 2.0), 2); })),
        kernel(riesz_kernel(g, 0.5, KernelRule::ZetaCorrected)) {
    std::mt19937_64 rng(7);
    rho = random_density(g, rng);
  }
};

// Thread count is the second range argument; 0 means the serial reference.
void BM_convolve(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  set_kernel_threads(std::max(threads, 1));
  for (auto _ : state) {
    auto out = threads == 0 ? serial::convolve(in.g, in.kernel, in.rho.values)
                            : parallel::convolve(in.g, in.kernel, in.rho.values);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_convolve_fft(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = convolve_fft(in.g, 0.5, KernelRule::ZetaCorrected, in.rho.values);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_hartree_sym(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  set_kernel_threads(std::max(threads, 1));
  for (auto _ : state) {
    const double h = threads == 0
                         ? serial::hartree_sym(in.g, in.phi.values, in.phi_x.values, in.rho.values, 0.5,
                                               KernelRule::ZetaCorrected)
                         : parallel::hartree_sym(in.g, in.phi.values, in.phi_x.values, in.rho.values, 0.5,
                                                 KernelRule::ZetaCorrected);
    benchmark::DoNotOptimize(h);
  }
}

void BM_hartree_sym_fft(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const double h =
        hartree_sym_fft(in.g, in.phi.values, in.phi_x.values, in.rho.values, 0.5, KernelRule::ZetaCorrected);
    benchmark::DoNotOptimize(h);
  }
}

void direct_args(benchmark::internal::Benchmark* b) {
  for (long n : {1024, 4096})
    for (long t : {0, 1, 2, 4}) b->Args({n, t});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_convolve)->Apply(direct_args);
BENCHMARK(BM_hartree_sym)->Apply(direct_args);
BENCHMARK(BM_convolve_fft)->Arg(1024)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hartree_sym_fft)->Arg(1024)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
