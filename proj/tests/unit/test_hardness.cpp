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
#include "qperm/hardness.hpp"
#include "qperm/zperm.hpp"

using namespace qperm;

namespace {

std::vector<mpz_class> Z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

bool has_code(const Error& e, ErrorCode c) { return e.code() == c; }

ComplexBall C(double re, double im = 0) { return ComplexBall::from_double(re, im, 128); }

}  // namespace

TEST_CASE("residues from representations", "[hardness]") {
  const Residue r = per_mod_p_from_rep(CycInt(3, Z({1, 1})), 3);
  CHECK(r.value == 2);
  CHECK(r.p == 3);
  for (std::int64_t m : {3, 5, 9, 25, 27})
    CHECK(per_mod_p_from_rep(per_at_root(MatrixZ::binary(identity_matrix<mpz_class>(4)), {m, 1}),
                             prime_power(m)->first)
              .value == 1);
  try {
    per_mod_p_from_rep(CycInt(8), 2);
    FAIL("expected TwoPowerExcluded");
  } catch (const Error& e) {
    CHECK(has_code(e, ErrorCode::TwoPowerExcluded));
  }
  try {
    per_mod_p_from_rep(CycInt(15), 3);
    FAIL("expected NotPrimePower");
  } catch (const Error& e) {
    CHECK(has_code(e, ErrorCode::NotPrimePower));
  }
  // The non-canonical form keeps its residue.
  const IntPoly raw(Z({1, 1, 3, 0, 3}));
  CHECK(per_mod_p_from_rep(raw, 3, 3).value == per_mod_p_from_rep(reduce_mod_phi(raw, 3), 3).value);
}

TEST_CASE("cube root real part", "[hardness]") {
  CHECK(cube_root_real_part(1, 0, 0).value == 1);
  CHECK(cube_root_real_part(1, 1, 0).value == 2);
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<long> u(-40, 40);
  for (int t = 0; t < 100; ++t) {
    const mpz_class a0 = u(rng), a1 = u(rng), a2 = u(rng);
    const CycInt rep = reduce_mod_phi(std::vector<mpz_class>{a0, a1, a2}, 3);
    CHECK(cube_root_real_part(a0, a1, a2).value == per_mod_p_from_rep(rep, 3).value);
  }
}

TEST_CASE("high degree recovery", "[hardness]") {
  const HighDegResult j2 = per_from_highdeg(per_at_root(MatrixZ::binary(ones_matrix<mpz_class>(2)), {5, 1}), 2);
  CHECK(j2.per == 2);
  CHECK(j2.coeffs == Z({1, 1}));
  const HighDegResult id = per_from_highdeg(per_at_root(MatrixZ::binary(identity_matrix<mpz_class>(3)), {7, 1}), 3);
  CHECK(id.coeffs == Z({1, 0, 0, 0}));
  try {
    per_from_highdeg(CycInt(5), 4);
    FAIL("expected DegreeTooLow");
  } catch (const Error& e) {
    CHECK(has_code(e, ErrorCode::DegreeTooLow));
  }
}

TEST_CASE("interpolation nodes and Vandermonde solves", "[hardness]") {
  CHECK(default_interp_shift(6) == mpq_class(1, 14));
  const InterpNodes nodes = make_interp_nodes(6, 128);
  REQUIRE(nodes.nodes.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j) CHECK(!nodes.nodes[i].overlaps(nodes.nodes[j]));
  CHECK_THROWS_AS(make_interp_nodes(3, mpq_class(1, 4), 128), Error);

  // d = 1 on {1, -1}.
  const auto c = vandermonde_solve(std::vector<ComplexBall>{C(1), C(-1)}, std::vector<ComplexBall>{C(3), C(1)});
  CHECK(c[0].contains(2, 0));
  CHECK(c[1].contains(1, 0));
  // Constant values.
  const auto k = vandermonde_solve(nodes, std::vector<ComplexBall>(7, C(2.5, -1)));
  CHECK(k[0].contains(mpq_class(5, 2), -1));
  for (std::size_t i = 1; i < 7; ++i) CHECK(k[i].contains(0, 0));
  CHECK_THROWS_AS(vandermonde_solve(std::vector<ComplexBall>{C(1), C(1)}, std::vector<ComplexBall>{C(1), C(2)}),
                  Error);
}

TEST_CASE("round trip through interpolation", "[hardness]") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto x = MatrixZ::binary(qperm_test::random_binary(n, rng));
    const std::size_t d = n * (n - 1) / 2;
    const InterpNodes nodes = make_interp_nodes(d, 192);
    const auto exact = exact_node_values(x, nodes);
    std::vector<ComplexBall> vals;
    for (const auto& v : exact) vals.push_back(embed(v, 192));
    const auto coeffs = vandermonde_solve(nodes, vals);
    const auto want = invpoly_integer(x).coeffs;
    for (std::size_t l = 0; l <= d; ++l) CHECK(coeffs[l].contains(mpq_class(want[l]), 0));

    const auto ex = interpolate_exact(nodes, exact);
    for (std::size_t l = 0; l <= d; ++l) CHECK(ex[l] == CycRat::constant(ex[l].modulus(), mpq_class(want[l])));

    const InterpEstimate add = interpolate_per_additive(nodes, vals, 0.0, C(1));
    CHECK(add.estimate.contains(mpq_class(per_one_ryser(x.integers())), 0));
    CHECK(add.estimate.radius() < 1e-20);
    const InterpEstimate mul = interpolate_per_multiplicative(nodes, vals, 0.0, x);
    CHECK(mul.estimate.contains(mpq_class(per_one_ryser(x.integers())), 0));
  }
  // d = 0 returns the single evaluation.
  const InterpNodes one = make_interp_nodes(0, 128);
  const InterpEstimate e = interpolate_per_additive(one, {C(4, 1)}, 0.0, C(1));
  CHECK(e.estimate.contains(4, 1));
}

TEST_CASE("multiplicative interpolation guards", "[hardness]") {
  const InterpNodes nodes = make_interp_nodes(1, 128);
  Matrix<mpz_class> neg(2, mpz_class(1));
  neg(0, 1) = -1;
  try {
    interpolate_per_multiplicative(nodes, {C(1), C(1)}, 0.1, MatrixZ::integer(neg));
    FAIL("expected NegativeEntries");
  } catch (const Error& e) {
    CHECK(has_code(e, ErrorCode::NegativeEntries));
  }
  const InterpEstimate zero =
      interpolate_per_multiplicative(nodes, {C(0), C(0)}, 0.0, MatrixZ::binary(Matrix<mpz_class>(2, mpz_class(0))));
  CHECK(zero.estimate.contains(0, 0));
  CHECK(zero.estimate.radius() == 0.0);
}

TEST_CASE("conjugate transfer", "[hardness]") {
  const ComplexBall real = C(3.25);
  CHECK(conjugate_transfer(real).contains(mpq_class(13, 4), 0));
  const ComplexBall b = C(1, 2).add_error(1e-9);
  const ComplexBall t = conjugate_transfer(b);
  CHECK(t.contains(1, -2));
  CHECK(t.radius() == b.radius());

  std::mt19937_64 rng(22);
  for (int k = 0; k < 50; ++k) {
    const auto x = qperm_test::random_gaussian_rational(3, rng);
    Matrix<GaussRat> xc(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) xc(i, j) = x(i, j).conj();
    const CycRat lhs = cyc_conj(specialize(invpoly_gaussian(MatrixZ(xc)), RootOfUnity{3, 1}));
    const CycRat rhs = specialize(invpoly_gaussian(MatrixZ(x)), RootOfUnity{3, 2});
    CHECK(lhs == rhs);
  }
}
