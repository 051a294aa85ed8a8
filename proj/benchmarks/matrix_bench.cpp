#include <benchmark/benchmark.h>

#include "workbench/matrix.hpp"
#include "workbench/rng.hpp"
#include "workbench/verify.hpp"

using namespace workbench;

namespace {

SeqMatrix random_unitriangular_seq(std::size_t n) {
  Rng rng(17);
  return seqmx_of_mx(random_unitriangular(rng, Field::prime(101), n));
}

std::pair<SeqMatrix, SeqMatrix> random_pair(std::size_t n) {
  Rng rng(19);
  const Field gf = Field::prime(101);
  return {seqmx_of_mx(random_matrix(rng, gf, n)), seqmx_of_mx(random_matrix(rng, gf, n))};
}

}  // namespace

static void BM_CfastInvmx(benchmark::State& state) {
  const SeqMatrix m = random_unitriangular_seq(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    SeqMatrix inverse = cfast_invmx(m);
    benchmark::DoNotOptimize(inverse);
  }
}
BENCHMARK(BM_CfastInvmx)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

static void BM_InvmxGaussJordan(benchmark::State& state) {
  Rng rng(17);
  const AbstractMatrix m =
      random_unitriangular(rng, Field::prime(101), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    AbstractMatrix inverse = invmx(m);
    benchmark::DoNotOptimize(inverse);
  }
}
BENCHMARK(BM_InvmxGaussJordan)->Arg(32)->Arg(64)->Arg(128);

static void BM_MulSeqmxNaive(benchmark::State& state) {
  const auto [a, b] = random_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    SeqMatrix product = mul_seqmx(a, b);
    benchmark::DoNotOptimize(product);
  }
}
BENCHMARK(BM_MulSeqmxNaive)->Arg(64)->Arg(128)->Arg(256);

static void BM_FastMultSeqmx(benchmark::State& state) {
  const auto [a, b] = random_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    SeqMatrix product = fast_mult_seqmx(a, b, 64);
    benchmark::DoNotOptimize(product);
  }
}
BENCHMARK(BM_FastMultSeqmx)->Arg(64)->Arg(128)->Arg(256);

static void BM_FastInvmxRationals(benchmark::State& state) {
  Rng rng(23);
  const AbstractMatrix m =
      random_unitriangular(rng, Field::rationals(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    AbstractMatrix inverse = fast_invmx(m);
    benchmark::DoNotOptimize(inverse);
  }
}
BENCHMARK(BM_FastInvmxRationals)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
