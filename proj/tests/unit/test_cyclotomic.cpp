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

#include <random>

#include "oracles.hpp"
#include "qperm/cyclotomic.hpp"
#include "qperm/error.hpp"

using namespace qperm;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<mpz_class> Z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

CycInt random_cyc(std::int64_t m, std::mt19937_64& rng, long bound = 20) {
  std::uniform_int_distribution<long> u(-bound, bound);
  std::vector<mpz_class> c(static_cast<std::size_t>(totient(m)));
  for (auto& x : c) x = u(rng);
  return CycInt(m, c);
}

}  // namespace

TEST_CASE("totient matches brute counting", "[cyclotomic]") {
  CHECK(totient(1) == 1);
  CHECK(totient(9) == 6);
  CHECK(totient(12) == 4);
  for (std::int64_t m = 1; m <= 200; ++m) CHECK(totient(m) == qperm_test::brute_totient(m));
}

TEST_CASE("cyclotomic polynomials", "[cyclotomic]") {
  CHECK(cyclotomic_poly(1).coeffs() == Z({-1, 1}));
  CHECK(cyclotomic_poly(3).coeffs() == Z({1, 1, 1}));
  CHECK(cyclotomic_poly(9).coeffs() == Z({1, 0, 0, 1, 0, 0, 1}));
  for (std::int64_t m = 1; m <= 105; ++m) {
    INFO("m = " << m);
    CHECK(cyclotomic_poly(m).coeffs() == qperm_test::mobius_cyclotomic(m));
  }
  // Phi_105 is the first with a coefficient of absolute value 2.
  const IntPoly phi105 = cyclotomic_poly(105);
  const auto& c = phi105.coeffs();
  CHECK(std::find(c.begin(), c.end(), mpz_class(-2)) != c.end());
}

TEST_CASE("reduce_mod_phi", "[cyclotomic]") {
  CHECK(reduce_mod_phi(IntPoly(Z({0, 0, 1})), 3).coeffs() == Z({-1, -1}));
  for (std::int64_t m : {1, 2, 3, 5, 9, 12, 15}) CHECK(reduce_mod_phi(cyclotomic_poly(m), m).is_zero());
  // Already of degree < phi(5): the remainder is the polynomial itself.
  CHECK(reduce_mod_phi(IntPoly(Z({1, 1, 1, 1})), 5).coeffs() == Z({1, 1, 1, 1}));

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> u(-50, 50);
  for (std::int64_t m : {3, 4, 5, 7, 9, 12, 15, 27}) {
    const auto phi = qperm_test::mobius_cyclotomic(m);
    for (int t = 0; t < 20; ++t) {
      std::vector<mpz_class> p(static_cast<std::size_t>(3 * m)), q(5);
      for (auto& x : p) x = u(rng);
      for (auto& x : q) x = u(rng);
      const CycInt r = reduce_mod_phi(p, m);
      CHECK(r.coeffs() == qperm_test::poly_rem(p, phi));
      CHECK(reduce_mod_phi(r.coeffs(), m) == r);
      // p + q Phi_m reduces to the same element.
      std::vector<mpz_class> s = p;
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j) {
          if (s.size() <= i + j) s.resize(i + j + 1, 0);
          s[i + j] += q[i] * phi[j];
        }
      CHECK(reduce_mod_phi(s, m) == r);
    }
  }
}

TEST_CASE("ring operations", "[cyclotomic]") {
  const CycInt z3 = CycInt::zeta_power(3, 1), z3sq = CycInt::zeta_power(3, 2);
  CHECK((z3 + z3sq).coeffs() == Z({-1, 0}));
  CHECK(CycInt::zeta_power(5, 2) * CycInt::zeta_power(5, 3) == CycInt::constant(5, 1));
  CHECK_THROWS_MATCHES(z3 + CycInt::zeta_power(5, 1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::MismatchedModulus;
                       }));

  std::mt19937_64 rng(2);
  for (std::int64_t m : {3, 4, 5, 8, 9, 12}) {
    for (int t = 0; t < 20; ++t) {
      const CycInt a = random_cyc(m, rng), b = random_cyc(m, rng), c = random_cyc(m, rng);
      CHECK(a * CycInt::constant(m, 1) == a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == CycInt(m));
      CHECK(cyc_conj(cyc_conj(a)) == a);
      CHECK(cyc_conj(a * b) == cyc_conj(a) * cyc_conj(b));
      // Product against the long-double embedding.
      const auto ea = qperm_test::eval_at_root(a.coeffs(), m), eb = qperm_test::eval_at_root(b.coeffs(), m);
      const auto eab = qperm_test::eval_at_root((a * b).coeffs(), m);
      CHECK(std::abs(eab - ea * eb) < 1e-9L * (1 + std::abs(eab)));
      const ComplexBall n2 = embed(a * cyc_conj(a), 128);
      CHECK(n2.re().to_double() >= -n2.radius());
      CHECK(std::abs(n2.im().to_double()) <= n2.radius() + 1e-30);
    }
  }
}

TEST_CASE("conjugation and inverse", "[cyclotomic]") {
  CHECK(cyc_conj(CycInt::constant(7, 5)) == CycInt::constant(7, 5));
  CHECK(cyc_conj(CycInt::zeta_power(3, 1)).coeffs() == Z({-1, -1}));
  CHECK(cyc_inverse(CycRat::constant(5, 2)) == CycRat::constant(5, mpq_class(1, 2)));
  CHECK(cyc_inverse(CycRat(CycInt::zeta_power(5, 1))) == CycRat(CycInt::zeta_power(5, 4)));
  CHECK_THROWS_AS(cyc_inverse(CycRat(5)), Error);

  std::mt19937_64 rng(3);
  for (std::int64_t m : {3, 5, 7, 12, 15}) {
    for (int t = 0; t < 20; ++t) {
      CycInt a = random_cyc(m, rng);
      if (a.is_zero()) continue;
      const CycRat ra(a, 3);
      CHECK(ra * cyc_inverse(ra) == CycRat::constant(m, 1));
      // Conjugation matches the complex conjugate of the embedding.
      const ComplexBall e = embed(a, 128), c = embed(cyc_conj(a), 128);
      CHECK_THAT(e.re().to_double() - c.re().to_double(), WithinAbs(0, 1e-20));
      CHECK_THAT(e.im().to_double() + c.im().to_double(), WithinAbs(0, 1e-20));
    }
  }
}

TEST_CASE("embedding", "[cyclotomic]") {
  const ComplexBall one = embed(CycInt::constant(3, 1), 64);
  CHECK(one.contains(1, 0));
  CHECK(one.radius() <= std::ldexp(1.0, -62));
  CHECK(embed(CycInt::zeta_power(4, 1), 64).contains(0, 1));
  const ComplexBall w = embed(CycInt(3, Z({1, 1})), 128);
  CHECK_THAT(w.re().to_double(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(w.im().to_double(), WithinAbs(std::sqrt(3.0) / 2, 1e-15));

  std::mt19937_64 rng(4);
  for (std::int64_t m : {5, 7, 9, 16, 30}) {
    const CycInt a = random_cyc(m, rng, 1000000);
    const ComplexBall lo = embed(a, 64), hi = embed(a, 256);
    CHECK(lo.overlaps(hi));
    CHECK(hi.radius() < lo.radius());
    CHECK(embed_to_radius(a, 1e-40).radius() <= 1e-40);
  }
}

TEST_CASE("coefficient sums and separation bound", "[cyclotomic]") {
  CHECK(coefficient_sum_mod(CycInt(3), 3) == 0);
  CHECK(coefficient_sum_mod(CycInt(3, Z({1, 1})), 3) == 2);
  CHECK(separation_bound(1, 3) == mpq_class(1, 5));
  CHECK(separation_bound(1, 2) == 1);

  // Adding multiples of Phi_{p^k} never changes the sum mod p.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> u(-30, 30);
  for (std::int64_t m : {3, 9, 25, 27}) {
    const auto pp = prime_power(m);
    REQUIRE(pp);
    const auto phi = cyclotomic_poly(m).coeffs();
    for (int t = 0; t < 100; ++t) {
      std::vector<mpz_class> p(static_cast<std::size_t>(m) + 3);
      for (auto& x : p) x = u(rng);
      std::vector<mpz_class> s = p;
      const long c = u(rng);
      for (std::size_t j = 0; j < phi.size(); ++j) s[j] += c * phi[j];
      mpz_class sp = 0, ss = 0;
      for (auto& x : p) sp += x;
      for (auto& x : s) ss += x;
      const mpz_class P = pp->first;
      CHECK(((sp % P) + P) % P == ((ss % P) + P) % P);
      CHECK(coefficient_sum_mod(reduce_mod_phi(p, m), P) == ((sp % P) + P) % P);
    }
  }
}

TEST_CASE("coefficient bounds dominate observed coefficients", "[cyclotomic]") {
  // The observed side is in test_zperm; here the bound shape only.
  for (std::int64_t m : {3, 5, 9}) {
    CHECK(rep_coeff_bound(m, 1).value >= 1);
    CHECK(reduction_coeff_bound(m, 4).value <= rep_coeff_bound(m, 4).value);
  }
  CHECK(factorial(5) == 120);
}
