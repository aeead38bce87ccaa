// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "fblow/kernels.hpp"
#include "fblow/parse.hpp"

using namespace fblow;

namespace {

PolyMatrix random_matrix(const RingPtr& r, std::size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  PolyMatrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Term> terms;
      for (int t = 0; t < 2; ++t) {
        Monomial mono(r->nvars());
        mono.set(rng() % r->nvars(), static_cast<uint32_t>(rng() % 3));
        terms.push_back({mono, static_cast<uint32_t>(1 + rng() % (r->characteristic() - 1))});
      }
      m.at(i, j) = Polynomial::from_terms(r, std::move(terms));
    }
  }
  return m;
}

void BM_MinorsSerial(benchmark::State& st) {
  auto r = PolyRing::make(3, {"x", "y", "z"});
  PolyMatrix m = random_matrix(r, static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::minors_serial(m, static_cast<std::size_t>(st.range(1))));
}

void BM_MinorsParallel(benchmark::State& st) {
  auto r = PolyRing::make(3, {"x", "y", "z"});
  PolyMatrix m = random_matrix(r, static_cast<std::size_t>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::minors_parallel(m, static_cast<std::size_t>(st.range(1))));
}

void BM_UMatrixSerial(benchmark::State& st) {
  auto r = PolyRing::make(2, {"x", "y", "z"});
  PolyMatrix a = random_matrix(r, static_cast<std::size_t>(st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::u_matrix_serial(a, 4));
}

void BM_UMatrixParallel(benchmark::State& st) {
  auto r = PolyRing::make(2, {"x", "y", "z"});
  PolyMatrix a = random_matrix(r, static_cast<std::size_t>(st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::u_matrix_parallel(a, 4));
}

}  // namespace

BENCHMARK(BM_MinorsSerial)->Args({6, 3})->Args({7, 4});
BENCHMARK(BM_MinorsParallel)->Args({6, 3})->Args({7, 4});
BENCHMARK(BM_UMatrixSerial)->Arg(2)->Arg(4);
BENCHMARK(BM_UMatrixParallel)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
