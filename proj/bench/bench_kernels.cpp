// Serial reference against the OpenMP kernels. Run with
// OMP_NUM_THREADS=<n> to vary the thread count.

#include "magnus/random.hpp"
#include "magnus/tensor.hpp"
#include "magnus/yangian.hpp"

#include <benchmark/benchmark.h>

using namespace magnus;

namespace {

template <class M> std::pair<M, M> operands(std::size_t n) {
  Rng rng(n);
  if constexpr (std::is_same_v<M, QMatrix>)
    return {rng.rational_matrix(n, n, 9, 7), rng.rational_matrix(n, n, 9, 7)};
  else
    return {to_double(rng.int_matrix(n, n, 9)), to_double(rng.int_matrix(n, n, 9))};
}

template <class M> void MatmulSerial(benchmark::State &state) {
  const auto [a, b] = operands<M>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(multiply_serial(a, b));
}

template <class M> void MatmulParallel(benchmark::State &state) {
  const auto [a, b] = operands<M>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(a * b);
}

// A two-slot operator placed on the first and last of `total` qubit-like
// factors, the shape used by the coproduct and RTT checks.
void EmbedSerial(benchmark::State &state) {
  const int total = static_cast<int>(state.range(0));
  const QMatrix p = permutation_op(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(embed_serial(p, {0, total - 1}, total, 2));
}

void EmbedParallel(benchmark::State &state) {
  const int total = static_cast<int>(state.range(0));
  const QMatrix p = permutation_op(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(embed(p, {0, total - 1}, total, 2));
}

// End to end: the exact monodromy on a growing chain, dominated by products.
void Monodromy(benchmark::State &state) {
  const int sites = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        monodromy_coproduct(LaxRep::fundamental(2), sites, 3));
}

} // namespace

BENCHMARK(MatmulSerial<QMatrix>)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(MatmulParallel<QMatrix>)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);
BENCHMARK(MatmulSerial<DMatrix>)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(MatmulParallel<DMatrix>)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(EmbedSerial)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(EmbedParallel)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(Monodromy)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
