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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "oracles.hpp"
#include "qperm/experiments.hpp"

using namespace qperm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using cld = std::complex<long double>;

std::vector<std::vector<std::size_t>> all_perms(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

cld zpow(const RootOfUnity& z, long e) {
  const long double a = 2.0L * acosl(-1.0L) * static_cast<long double>(z.k) * e / static_cast<long double>(z.m);
  return {cosl(a), sinl(a)};
}

// Wick expansion of E|Per_z|^4 for standard complex Gaussians: per row,
// E[x_a x_b conj(x_c) conj(x_d)] = [a=c][b=d] + [a=d][b=c].
cld wick_fourth(std::size_t n, const RootOfUnity& z) {
  const auto ps = all_perms(n);
  std::vector<long> inv;
  for (const auto& p : ps) inv.push_back(static_cast<long>(qperm_test::naive_inversions(p)));
  cld sum = 0;
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b)
      for (std::size_t c = 0; c < ps.size(); ++c)
        for (std::size_t d = 0; d < ps.size(); ++d) {
          long double w = 1;
          for (std::size_t i = 0; i < n && w != 0; ++i)
            w *= static_cast<long double>((ps[a][i] == ps[c][i] && ps[b][i] == ps[d][i]) +
                                          (ps[a][i] == ps[d][i] && ps[b][i] == ps[c][i]));
          if (w != 0) sum += w * zpow(z, inv[a] + inv[b] - inv[c] - inv[d]);
        }
  return sum;
}

long double tgamma_int(std::size_t n) {
  long double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long double>(i);
  return f;
}

}  // namespace

TEST_CASE("hash helpers", "[experiments]") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(splitmix64(0) != splitmix64(1));
  CHECK(splitmix64(7) == splitmix64(7));
}

TEST_CASE("root double balls", "[experiments]") {
  CHECK(root_double_ball({1, 1}).mid == std::complex<double>(1, 0));
  CHECK(root_double_ball({2, 1}).mid == std::complex<double>(-1, 0));
  CHECK(root_double_ball({4, 1}).mid == std::complex<double>(0, 1));
  CHECK(root_double_ball({4, 3}).mid == std::complex<double>(0, -1));
  const DoubleBall b = root_double_ball({5, 2});
  CHECK(std::abs(b.mid - std::polar(1.0, 4 * M_PI / 5)) <= b.rad);
}

TEST_CASE("exact second moment is n! for every root", "[experiments]") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (RootOfUnity z : {RootOfUnity{1, 1}, RootOfUnity{2, 1}, RootOfUnity{3, 1}, RootOfUnity{5, 2}, RootOfUnity{8, 3}})
      CHECK(exact_second_moment(n, z) == mpq_class(static_cast<unsigned long>(tgamma_int(n))));
}

TEST_CASE("exact fourth moment against a Wick expansion", "[experiments]") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (RootOfUnity z : {RootOfUnity{1, 1}, RootOfUnity{2, 1}, RootOfUnity{3, 1}, RootOfUnity{5, 1}, RootOfUnity{7, 3}}) {
      const std::complex<double> got = embed(exact_fourth_moment(n, z), 128).approx();
      const cld want = wick_fourth(n, z);
      CHECK_THAT(got.real(), WithinAbs(static_cast<double>(want.real()), 1e-6));
      CHECK_THAT(got.imag(), WithinAbs(0.0, 1e-9));
    }
  // z = 1: n! (n+1)!.
  for (std::size_t n = 1; n <= 5; ++n) {
    const CycInt v = exact_fourth_moment(n, {1, 1});
    CHECK_THAT(embed(v, 128).approx().real(),
               WithinRel(static_cast<double>(tgamma_int(n) * tgamma_int(n + 1)), 1e-12));
  }
}

TEST_CASE("permutation cycle identity", "[experiments]") {
  for (std::size_t n = 1; n <= 8; ++n) {
    mpz_class brute = 0;
    for (const auto& p : all_perms(n)) {
      std::vector<bool> seen(n);
      unsigned cycles = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true;
      }
      brute += mpz_class(1) << cycles;
    }
    const FourthMomentIdentity id = fourth_moment_identity(n);
    CHECK(id.lhs == brute);
    CHECK(id.rhs == mpz_class(static_cast<unsigned long>(tgamma_int(n + 1))));
    CHECK(id.equal);
  }
}

TEST_CASE("Monte Carlo moments", "[experiments]") {
  const MomentReport r = moment_estimate(3, {3, 1}, 1, 20000, DistSpec{}, 11, 2);
  REQUIRE(r.exact_reference);
  CHECK(*r.exact_reference == 6);
  CHECK(std::abs(r.estimate - 6.0) <= 5 * r.std_error);
  CHECK(r.max_eval_error <= 1e-9);

  // Worker count does not change the estimate.
  const MomentReport a = moment_estimate(3, {5, 2}, 2, 3000, DistSpec{}, 12, 1);
  const MomentReport b = moment_estimate(3, {5, 2}, 2, 3000, DistSpec{}, 12, 3);
  CHECK(a.estimate == b.estimate);
  CHECK(a.config_hash == b.config_hash);

  const MomentReport f = moment_estimate(3, {1, 1}, 2, 40000, DistSpec{}, 13, 2);
  REQUIRE(f.exact_reference);
  CHECK(*f.exact_reference == 144);
  CHECK(std::abs(f.estimate - 144.0) <= 5 * f.std_error);
}

TEST_CASE("fourth moment dominance and anticoncentration tallies", "[experiments]") {
  const DominanceReport d = moment_dominance_check(3, {3, 1}, 5000, 21, 2);
  // At n = 3 both fourth moments equal 144 exactly.
  CHECK(std::abs(d.mean_difference) <= 5 * d.difference_std_error + 1e-9);

  const AntiConcentrationReport a = anticoncentration_tally(1, {1, 1}, 0.5, 20000, 22, 2);
  // n = 1: |x|^2 ~ Exp(1), so P(|x|^2 > 1/2) = e^{-1/2}.
  CHECK(std::abs(a.empirical_prob - std::exp(-0.5)) <= 5 * a.std_error);
  CHECK_THAT(a.chebyshev_bound, WithinRel(0.125, 1e-12));

  const AntiConcentrationReport b = anticoncentration_tally(4, {3, 1}, 0.5, 4000, 23, 1);
  CHECK(b.empirical_prob >= b.chebyshev_bound);
  CHECK(b.hits + b.undecided <= b.samples);
}
