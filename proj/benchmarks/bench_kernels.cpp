// Copyright 2026 The qperm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "qperm/zperm.hpp"

using namespace qperm;

namespace {

Matrix<mpz_class> random_binary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix<mpz_class> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() & 1);
  return m;
}

void BM_InvPolyBruteForce(benchmark::State& state) {
  const MatrixZ x = MatrixZ::binary(random_binary(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(invpoly_bruteforce(x));
}
BENCHMARK(BM_InvPolyBruteForce)->DenseRange(4, 8, 2);

void BM_InvPolySubsetDP(benchmark::State& state) {
  const MatrixZ x = MatrixZ::binary(random_binary(static_cast<std::size_t>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(invpoly_subset_dp(x));
}
BENCHMARK(BM_InvPolySubsetDP)->DenseRange(4, 14, 2);

void BM_PerAtRoot(benchmark::State& state) {
  const MatrixZ x = MatrixZ::binary(random_binary(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(per_at_root(x, {5, 1}));
}
BENCHMARK(BM_PerAtRoot)->DenseRange(4, 12, 4);

void BM_Ryser(benchmark::State& state) {
  const Matrix<mpz_class> x = random_binary(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(per_one_ryser(x));
}
BENCHMARK(BM_Ryser)->DenseRange(8, 16, 4);

}  // namespace

BENCHMARK_MAIN();
