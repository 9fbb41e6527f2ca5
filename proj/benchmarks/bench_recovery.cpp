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

#include "qperm/cyclotomic.hpp"
#include "qperm/recovery.hpp"
#include "qperm/selfreduce.hpp"

using namespace qperm;

namespace {

void BM_CaipSearch(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  const std::size_t phi = static_cast<std::size_t>(totient(m));
  std::vector<mpz_class> c(phi);
  for (std::size_t i = 0; i < phi; ++i) c[i] = static_cast<long>((7 * i + 3) % 51);
  const mpq_class delta = separation_bound(50, m) / 4;
  const mpz_class T = delta.get_den() / delta.get_num();
  const ComplexBall alpha = embed(CycInt(m, c), 256);
  for (auto _ : state) benchmark::DoNotOptimize(caip_search(alpha, std::vector<mpz_class>(phi, 50), T, m));
}
BENCHMARK(BM_CaipSearch)->Arg(3)->Arg(5)->Arg(7);

void BM_BerlekampWelch(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const std::size_t L = 4 * d, e = (L - d - 1) / 2;
  const std::int64_t m = 12;
  std::mt19937_64 rng(5);
  std::vector<CycRat> q;
  for (std::size_t i = 0; i <= d; ++i) q.push_back(CycRat::constant(m, mpq_class(static_cast<long>(rng() % 19) - 9)));
  const FieldPoly poly{q};
  std::vector<CycRat> xs, ys;
  for (std::size_t i = 0; i < L; ++i) {
    xs.push_back(CycRat::constant(m, mpq_class(static_cast<long>(i) + 1)));
    ys.push_back(poly.eval(xs.back()));
  }
  for (std::size_t i = 0; i < e; ++i) ys[2 * i] = ys[2 * i] + CycRat::constant(m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(berlekamp_welch(xs, ys, d));
}
BENCHMARK(BM_BerlekampWelch)->DenseRange(2, 8, 3);

void BM_RecoverExact(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix<mpz_class> x(n, mpz_class(1));
  for (std::size_t i = 0; i + 1 < n; ++i) x(i + 1, i) = 0;
  const MatrixZ mx = MatrixZ::binary(x);
  for (auto _ : state) {
    OracleConfig cfg;
    cfg.g = 10;
    cfg.adversary = Adversary::worst_case_alternating;
    NormSqOracle oracle({5, 1}, cfg);
    benchmark::DoNotOptimize(recover_exact(mx, oracle));
  }
}
BENCHMARK(BM_RecoverExact)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

}  // namespace
