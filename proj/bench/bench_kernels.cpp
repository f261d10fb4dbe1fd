// Serial reference kernels against their OpenMP counterparts.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <array>
#include <memory>

#include "sgws/kernels.hpp"
#include "sgws/rng.hpp"
#include "sgws/sep.hpp"
#include "sgws/sgws.hpp"

using namespace sgws;

namespace {

ComplexDense random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexDense m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const auto [re, im] = rng.normal_pair();
      m(i, j) = {re, im};
    }
  return m;
}

template <auto Kernel>
void bm_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, n, 1);
  const auto b = random_matrix(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void bm_kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, n, 3);
  const auto b = random_matrix(9, 9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
}

template <auto Kernel>
void bm_partial_transpose(benchmark::State& state) {
  const auto parties = static_cast<std::size_t>(state.range(0));
  std::size_t dim = 1;
  for (std::size_t r = 0; r < parties; ++r) dim *= 3;
  const auto rho = random_matrix(dim, dim, 5);
  const std::vector<std::size_t> dims(parties, 3);
  const auto flags = std::make_unique<bool[]>(parties);
  for (std::size_t r = 0; r < parties; ++r) flags[r] = r % 2 == 0;
  const std::span<const bool> transposed(flags.get(), parties);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(rho, dims, transposed));
}

struct Packed {
  std::vector<double> weights;
  std::vector<cplx> factors;
  kernels::PackedProducts view() const { return {3, 3, weights, factors}; }
};

Packed packed_decomposition() {
  const auto decomposition = sep::decompose_sgws(make_spec(family_coeffs(3, 1.0), 3, 0.05));
  Packed p;
  for (const auto& term : decomposition.terms) {
    p.weights.push_back(term.weight);
    for (const auto& f : term.factors) p.factors.insert(p.factors.end(), f.data().begin(), f.data().end());
  }
  return p;
}

template <auto Kernel>
void bm_reconstruct(benchmark::State& state) {
  static const Packed packed = packed_decomposition();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(packed.view()));
}

template <auto Kernel>
void bm_cauchy_schwarz(benchmark::State& state) {
  const auto parties = static_cast<std::size_t>(state.range(0));
  const auto w = build_sgws(make_spec(family_coeffs(3, 0.4), parties, 0.6));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(w, 3, parties, 1e-12));
}

}  // namespace

BENCHMARK(bm_matmul<kernels::serial::matmul>)->Name("matmul/serial")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_matmul<kernels::parallel::matmul>)->Name("matmul/parallel")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(bm_kron<kernels::serial::kron>)->Name("kron/serial")->Arg(9)->Arg(27);
BENCHMARK(bm_kron<kernels::parallel::kron>)->Name("kron/parallel")->Arg(9)->Arg(27);
BENCHMARK(bm_partial_transpose<kernels::serial::partial_transpose>)->Name("partial_transpose/serial")->DenseRange(2, 5);
BENCHMARK(bm_partial_transpose<kernels::parallel::partial_transpose>)->Name("partial_transpose/parallel")->DenseRange(2, 5);
BENCHMARK(bm_reconstruct<kernels::serial::reconstruct>)->Name("reconstruct/serial");
BENCHMARK(bm_reconstruct<kernels::parallel::reconstruct>)->Name("reconstruct/parallel");
BENCHMARK(bm_cauchy_schwarz<kernels::serial::cauchy_schwarz_scan>)->Name("cauchy_schwarz/serial")->DenseRange(2, 4);
BENCHMARK(bm_cauchy_schwarz<kernels::parallel::cauchy_schwarz_scan>)->Name("cauchy_schwarz/parallel")->DenseRange(2, 4);

BENCHMARK_MAIN();
