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

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "qperm/ball.hpp"
#include "qperm/cyclotomic.hpp"
#include "qperm/dball.hpp"
#include "qperm/matrix.hpp"

namespace qperm {

// Permutation of {0, ..., n-1} stored by images (sigma(i) = images[i]).
struct Permutation {
  std::vector<std::size_t> images;

  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> img);
  // From 1-based images as written in the literature.
  static Permutation from_one_based(const std::vector<std::size_t>& img);
  std::size_t size() const { return images.size(); }
};

std::size_t inversion_number(const Permutation& sigma);
std::size_t inversion_number(const std::vector<std::size_t>& images);
std::size_t cycle_count(const std::vector<std::size_t>& images);

// Inversion-number generating polynomial: coeffs[l] sums the weights of the
// permutations with l inversions. Length is C(n,2) + 1.
template <class R>
struct InvPoly {
  std::size_t n = 0;
  std::vector<R> coeffs;
};

template <class R>
bool operator==(const InvPoly<R>& a, const InvPoly<R>& b) {
  return a.n == b.n && a.coeffs == b.coeffs;
}

using AnyInvPoly = std::variant<InvPoly<mpz_class>, InvPoly<GaussRat>, InvPoly<ComplexBall>>;

struct KernelCaps {
  std::size_t brute_force_cap = 9;
  std::size_t dp_cap = 20;
  std::size_t ryser_cap = 24;
  unsigned jobs = 1;
  mpfr_prec_t precision = kDefaultPrecision;  // complex_float inputs
};

// Typed kernels. Instantiated for mpz_class, GaussRat and ComplexBall.
template <class R>
InvPoly<R> invpoly_bruteforce(const Matrix<R>& x, const KernelCaps& caps = {});
template <class R>
InvPoly<R> invpoly_subset_dp(const Matrix<R>& x, const KernelCaps& caps = {});

// Domain-dispatching kernels: binary/integer give big-integer coefficients,
// gaussian_rational gives GaussRat and complex_float gives balls.
AnyInvPoly invpoly_bruteforce(const MatrixZ& x, const KernelCaps& caps = {});
AnyInvPoly invpoly_subset_dp(const MatrixZ& x, const KernelCaps& caps = {});
InvPoly<mpz_class> invpoly_integer(const MatrixZ& x, const KernelCaps& caps = {});
// Exact kernel over Q(i) for any exact domain.
InvPoly<GaussRat> invpoly_gaussian(const MatrixZ& x, const KernelCaps& caps = {});

// z = zeta_m^k, gcd(k, m) = 1.
struct RootOfUnity {
  std::int64_t m = 1;
  std::int64_t k = 1;
};

void validate_root(const RootOfUnity& z);

CycInt specialize(const InvPoly<mpz_class>& p, const RootOfUnity& z);
// Result lives in Q(zeta_M), M = lcm(4, m), with i = zeta_M^{M/4}.
CycRat specialize(const InvPoly<GaussRat>& p, const RootOfUnity& z);
// Evaluation at zeta_M^e for any exponent e (no primitivity requirement).
CycInt evaluate_at_power(const InvPoly<mpz_class>& p, std::int64_t M, std::int64_t e);
CycRat evaluate_at_power(const InvPoly<GaussRat>& p, std::int64_t M, std::int64_t e);
ComplexBall specialize(const InvPoly<mpz_class>& p, const ComplexBall& z);
ComplexBall specialize(const InvPoly<GaussRat>& p, const ComplexBall& z);
ComplexBall specialize(const InvPoly<ComplexBall>& p, const ComplexBall& z);

// Per_{zeta}(X) for an integer matrix, exact.
CycInt per_at_root(const MatrixZ& x, const RootOfUnity& z, const KernelCaps& caps = {});
// Per(X) conj(Per(X)) at zeta_m.
CycInt normsq_at_root(const MatrixZ& x, std::int64_t m, const KernelCaps& caps = {});
CycInt normsq_at_root(const MatrixZ& x, const RootOfUnity& z, const KernelCaps& caps = {});

// Inclusion-exclusion permanent with Gray-code updates.
mpz_class per_one_ryser(const Matrix<mpz_class>& x, const KernelCaps& caps = {});
GaussRat per_one_ryser(const Matrix<GaussRat>& x, const KernelCaps& caps = {});
GaussRat per_one_ryser(const MatrixZ& x, const KernelCaps& caps = {});

// Scalar Per_z value for ball or double-ball entries; skips the polynomial.
ComplexBall per_z_value(const Matrix<ComplexBall>& x, const ComplexBall& z,
                        const KernelCaps& caps = {});
DoubleBall per_z_value(const Matrix<DoubleBall>& x, const DoubleBall& z,
                       const KernelCaps& caps = {});

// Internal helper shared by kernels: binomial coefficients up to n.
std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace qperm
