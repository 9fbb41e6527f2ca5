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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qperm/ball.hpp"
#include "qperm/poly.hpp"

namespace qperm {

std::int64_t totient(std::int64_t m);
std::int64_t divisor_count(std::int64_t m);
bool is_prime(std::int64_t p);
// (p, k) with m = p^k, k >= 1, or nothing.
std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t m);

// Phi_m, memoised.
IntPoly cyclotomic_poly(std::int64_t m);

// Element of Z[zeta_m] in canonical form: coefficient vector of length
// phi(m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
class CycInt {
 public:
  CycInt() : CycInt(1) {}
  explicit CycInt(std::int64_t m);
  // coeffs must already be canonical (length phi(m)).
  CycInt(std::int64_t m, std::vector<mpz_class> coeffs);

  static CycInt constant(std::int64_t m, const mpz_class& c);
  static CycInt zeta_power(std::int64_t m, std::int64_t k);

  std::int64_t modulus() const { return m_; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_one() const;

  CycInt operator-() const;
  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const mpz_class& s, const CycInt& a);
  CycInt& operator+=(const CycInt& b) { return *this = *this + b; }
  CycInt& operator*=(const CycInt& b) { return *this = *this * b; }
  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::int64_t m_;
  std::vector<mpz_class> coeffs_;
};

// Element of Q(zeta_m), stored as an integral numerator over a positive
// common denominator in lowest terms.
class CycRat {
 public:
  CycRat() : CycRat(1) {}
  explicit CycRat(std::int64_t m);
  CycRat(const CycInt& a);  // NOLINT(google-explicit-constructor)
  CycRat(std::int64_t m, const std::vector<mpq_class>& coeffs);
  CycRat(const CycInt& num, const mpz_class& den);

  static CycRat constant(std::int64_t m, const mpq_class& c);

  std::int64_t modulus() const { return num_.modulus(); }
  std::vector<mpq_class> coeffs() const;
  const CycInt& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  CycRat operator-() const;
  friend CycRat operator+(const CycRat& a, const CycRat& b);
  friend CycRat operator-(const CycRat& a, const CycRat& b);
  friend CycRat operator*(const CycRat& a, const CycRat& b);
  friend CycRat operator/(const CycRat& a, const CycRat& b);
  CycRat& operator+=(const CycRat& b) { return *this = *this + b; }
  CycRat& operator-=(const CycRat& b) { return *this = *this - b; }
  CycRat& operator*=(const CycRat& b) { return *this = *this * b; }
  friend bool operator==(const CycRat& a, const CycRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  CycInt num_;
  mpz_class den_ = 1;
};

// Remainder of p modulo Phi_m.
CycInt reduce_mod_phi(const IntPoly& p, std::int64_t m);
// Same, for coefficients indexed by exponent (any length).
CycInt reduce_mod_phi(const std::vector<mpz_class>& p, std::int64_t m);

// Galois map zeta -> zeta^k, gcd(k, m) = 1.
CycInt cyc_galois(const CycInt& a, std::int64_t k);
CycRat cyc_galois(const CycRat& a, std::int64_t k);
CycInt cyc_conj(const CycInt& a);
CycRat cyc_conj(const CycRat& a);
CycRat cyc_inverse(const CycRat& a);

// Image under Q(zeta_m) -> Q(zeta_M) for m | M.
CycInt change_modulus(const CycInt& a, std::int64_t M);
CycRat change_modulus(const CycRat& a, std::int64_t M);

// zeta_m fixed to e^{2 pi i / m}.
ComplexBall embed(const CycInt& a, mpfr_prec_t prec);
ComplexBall embed(const CycRat& a, mpfr_prec_t prec);
// Raises precision until the radius is at most target.
ComplexBall embed_to_radius(const CycInt& a, double target);
ComplexBall embed_to_radius(const CycRat& a, double target);

mpz_class coefficient_sum_mod(const CycInt& a, const mpz_class& p);

// 1 / (2 A phi(m) + 1)^{phi(m) - 1}.
mpq_class separation_bound(const mpz_class& A, std::int64_t m);

struct CoeffBound {
  mpz_class value;   // every canonical coefficient lies in [-value, value]
  std::int64_t bits; // ceil(log2 value)
};

// Constructive bound through |A_l| <= n!, the coefficient bound
// exp(d(m) log(m) / 2) for Phi_m and the polynomial quotient bound.
CoeffBound rep_coeff_bound(std::int64_t m, std::int64_t n);
// n! * max_k ||x^k mod Phi_m||_inf. Valid for binary matrices and much
// smaller than rep_coeff_bound when m has several prime factors.
CoeffBound reduction_coeff_bound(std::int64_t m, std::int64_t n);

mpz_class factorial(std::int64_t n);

}  // namespace qperm
