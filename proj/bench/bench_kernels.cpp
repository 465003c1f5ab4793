// Serial references against the OpenMP kernels. Set TREELAT_THREADS to cap
// the thread count of the parallel variants.

#include "treelat/mozes.hpp"
#include "treelat/tiling.hpp"
#include "treelat/zlinalg.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace treelat;

IntMatrix random_matrix(std::size_t n, unsigned seed)
{
   std::mt19937 rng(seed);
   std::uniform_int_distribution<long> entry(-50, 50);
   IntMatrix m(n, n);
   for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
   return m;
}

void BM_multiply_serial(benchmark::State &state)
{
   const auto n = static_cast<std::size_t>(state.range(0));
   const IntMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
   for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(a, b));
}

void BM_multiply_parallel(benchmark::State &state)
{
   const auto n = static_cast<std::size_t>(state.range(0));
   const IntMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
   for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void BM_tiling_serial(benchmark::State &state)
{
   const SquareComplex c = generate_mozes_complex(5, state.range(0));
   const auto r = expand_directed_squares(c);
   for (auto _ : state) benchmark::DoNotOptimize(build_tiling_serial(r, c));
}

void BM_tiling_parallel(benchmark::State &state)
{
   const SquareComplex c = generate_mozes_complex(5, state.range(0));
   const auto r = expand_directed_squares(c);
   for (auto _ : state) benchmark::DoNotOptimize(build_tiling(r, c));
}

void BM_relations_serial(benchmark::State &state)
{
   const GeneratorSet qp = norm_quaternions(5), ql = norm_quaternions(state.range(0));
   for (auto _ : state) benchmark::DoNotOptimize(solve_all_relations_serial(qp, ql));
}

void BM_relations_parallel(benchmark::State &state)
{
   const GeneratorSet qp = norm_quaternions(5), ql = norm_quaternions(state.range(0));
   for (auto _ : state) benchmark::DoNotOptimize(solve_all_relations(qp, ql));
}

} // namespace

BENCHMARK(BM_multiply_serial)->Arg(48)->Arg(96);
BENCHMARK(BM_multiply_parallel)->Arg(48)->Arg(96);
BENCHMARK(BM_tiling_serial)->Arg(13)->Arg(17)->Arg(29);
BENCHMARK(BM_tiling_parallel)->Arg(13)->Arg(17)->Arg(29);
BENCHMARK(BM_relations_serial)->Arg(13)->Arg(29);
BENCHMARK(BM_relations_parallel)->Arg(13)->Arg(29);

BENCHMARK_MAIN();
