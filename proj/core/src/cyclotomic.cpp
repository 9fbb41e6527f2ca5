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

#include "qperm/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "qperm/error.hpp"

namespace qperm {

namespace {

std::mutex& phi_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::int64_t, IntPoly>& phi_cache() {
  static std::map<std::int64_t, IntPoly> cache;
  return cache;
}

void check_modulus(std::int64_t m) {
  require(m >= 1, ErrorCode::InvalidArgument, "root order m must be >= 1");
}

// In-place reduction of an exponent-indexed coefficient vector; the result
// has length phi(m).
void reduce_in_place(std::vector<mpz_class>& v, std::int64_t m) {
  const IntPoly phi = cyclotomic_poly(m);
  const auto& pc = phi.coeffs();
  const std::size_t d = pc.size() - 1;
  // Fold exponents mod m first (x^m = 1 mod Phi_m).
  if (v.size() > static_cast<std::size_t>(m)) {
    for (std::size_t i = static_cast<std::size_t>(m); i < v.size(); ++i) {
      v[i % static_cast<std::size_t>(m)] += v[i];
    }
    v.resize(static_cast<std::size_t>(m));
  }
  for (std::size_t i = v.size(); i-- > d;) {
    if (v[i] == 0) continue;
    mpz_class c = v[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (pc[j] != 0) mpz_submul(v[i - d + j].get_mpz_t(), c.get_mpz_t(), pc[j].get_mpz_t());
    }
    v[i] = 0;
  }
  v.resize(d);
}

}  // namespace

std::int64_t totient(std::int64_t m) {
  require(m >= 1, ErrorCode::InvalidArgument, "totient: m must be >= 1");
  std::int64_t result = m;
  std::int64_t x = m;
  for (std::int64_t p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    while (x % p == 0) x /= p;
    result -= result / p;
  }
  if (x > 1) result -= result / x;
  return result;
}

std::int64_t divisor_count(std::int64_t m) {
  std::int64_t count = 0;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d == 0) count += (d * d == m) ? 1 : 2;
  }
  return count;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t m) {
  if (m < 2) return std::nullopt;
  std::int64_t p = 2;
  while (p * p <= m && m % p != 0) ++p;
  if (m % p != 0) p = m;
  int k = 0;
  std::int64_t x = m;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  if (x != 1) return std::nullopt;
  return std::make_pair(p, k);
}

IntPoly cyclotomic_poly(std::int64_t m) {
  check_modulus(m);
  {
    std::lock_guard<std::mutex> lock(phi_mutex());
    auto it = phi_cache().find(m);
    if (it != phi_cache().end()) return it->second;
  }
  IntPoly p = IntPoly::monomial(static_cast<std::size_t>(m)) - IntPoly::monomial(0);
  for (std::int64_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    IntPoly q, r;
    divmod_monic(p, cyclotomic_poly(d), q, r);
    require(r.is_zero(), ErrorCode::InvariantViolation, "cyclotomic division not exact");
    p = q;
  }
  std::lock_guard<std::mutex> lock(phi_mutex());
  phi_cache().emplace(m, p);
  return p;
}

// ---------------------------------------------------------------- CycInt

CycInt::CycInt(std::int64_t m) : m_(m), coeffs_(static_cast<std::size_t>(totient(m))) {}

CycInt::CycInt(std::int64_t m, std::vector<mpz_class> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == static_cast<std::size_t>(totient(m)), ErrorCode::InvalidArgument,
          "CycInt: coefficient vector must have length phi(m)");
}

CycInt CycInt::constant(std::int64_t m, const mpz_class& c) {
  CycInt a(m);
  a.coeffs_[0] = c;
  return a;
}

CycInt CycInt::zeta_power(std::int64_t m, std::int64_t k) {
  std::int64_t e = ((k % m) + m) % m;
  std::vector<mpz_class> v(static_cast<std::size_t>(e) + 1);
  v[static_cast<std::size_t>(e)] = 1;
  return reduce_mod_phi(v, m);
}

bool CycInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

bool CycInt::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                     [](const mpz_class& c) { return c == 0; });
}

CycInt CycInt::operator-() const {
  CycInt r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  require(a.m_ == b.m_, ErrorCode::MismatchedModulus, "cyc_add: moduli differ");
  CycInt r(a);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  return r;
}

CycInt operator-(const CycInt& a, const CycInt& b) {
  require(a.m_ == b.m_, ErrorCode::MismatchedModulus, "cyc_sub: moduli differ");
  CycInt r(a);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
  return r;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  require(a.m_ == b.m_, ErrorCode::MismatchedModulus, "cyc_mul: moduli differ");
  const std::size_t d = a.coeffs_.size();
  std::vector<mpz_class> v(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  reduce_in_place(v, a.m_);
  return CycInt(a.m_, std::move(v));
}

CycInt operator*(const mpz_class& s, const CycInt& a) {
  CycInt r(a);
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

CycInt reduce_mod_phi(const IntPoly& p, std::int64_t m) { return reduce_mod_phi(p.coeffs(), m); }

CycInt reduce_mod_phi(const std::vector<mpz_class>& p, std::int64_t m) {
  check_modulus(m);
  std::vector<mpz_class> v = p;
  reduce_in_place(v, m);
  return CycInt(m, std::move(v));
}

CycInt cyc_galois(const CycInt& a, std::int64_t k) {
  const std::int64_t m = a.modulus();
  require(std::gcd(k, m) == 1, ErrorCode::InvalidArgument, "galois map needs gcd(k, m) = 1");
  std::int64_t kk = ((k % m) + m) % m;
  std::vector<mpz_class> v(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    v[static_cast<std::size_t>((static_cast<std::int64_t>(i) * kk) % m)] += a.coeffs()[i];
  }
  return reduce_mod_phi(v, m);
}

CycInt cyc_conj(const CycInt& a) { return cyc_galois(a, a.modulus() - 1 == 0 ? 1 : a.modulus() - 1); }

CycInt change_modulus(const CycInt& a, std::int64_t M) {
  const std::int64_t m = a.modulus();
  require(M % m == 0, ErrorCode::MismatchedModulus, "change_modulus: m must divide M");
  const std::int64_t step = M / m;
  std::vector<mpz_class> v(static_cast<std::size_t>(step * static_cast<std::int64_t>(a.coeffs().size())));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) v[i * static_cast<std::size_t>(step)] = a.coeffs()[i];
  return reduce_mod_phi(v, M);
}

// ---------------------------------------------------------------- CycRat

CycRat::CycRat(std::int64_t m) : num_(m) {}

CycRat::CycRat(const CycInt& a) : num_(a) {}

CycRat::CycRat(const CycInt& num, const mpz_class& den) : num_(num), den_(den) {
  require(den_ != 0, ErrorCode::DivisionByZero, "CycRat: zero denominator");
  normalize();
}

CycRat::CycRat(std::int64_t m, const std::vector<mpq_class>& coeffs) : num_(m) {
  require(coeffs.size() == num_.coeffs().size(), ErrorCode::InvalidArgument,
          "CycRat: coefficient vector must have length phi(m)");
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> v(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    v[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  }
  num_ = CycInt(m, std::move(v));
  den_ = den;
  normalize();
}

CycRat CycRat::constant(std::int64_t m, const mpq_class& c) {
  return CycRat(CycInt::constant(m, c.get_num()), c.get_den());
}

std::vector<mpq_class> CycRat::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.coeffs().size());
  for (const auto& c : num_.coeffs()) {
    mpq_class q(c, den_);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

void CycRat::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_.coeffs()) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    std::vector<mpz_class> v = num_.coeffs();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    num_ = CycInt(num_.modulus(), std::move(v));
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

CycRat CycRat::operator-() const {
  CycRat r(*this);
  r.num_ = -r.num_;
  return r;
}

CycRat operator+(const CycRat& a, const CycRat& b) {
  if (a.den_ == b.den_) return CycRat(a.num_ + b.num_, a.den_);
  return CycRat(a.den_ == 1 ? b.den_ * a.num_ + b.num_ : (b.den_ * a.num_ + a.den_ * b.num_),
                a.den_ * b.den_);
}

CycRat operator-(const CycRat& a, const CycRat& b) { return a + (-b); }

CycRat operator*(const CycRat& a, const CycRat& b) {
  return CycRat(a.num_ * b.num_, a.den_ * b.den_);
}

CycRat operator/(const CycRat& a, const CycRat& b) { return a * cyc_inverse(b); }

CycRat cyc_galois(const CycRat& a, std::int64_t k) {
  return CycRat(cyc_galois(a.numerator(), k), a.denominator());
}

CycRat cyc_conj(const CycRat& a) { return CycRat(cyc_conj(a.numerator()), a.denominator()); }

CycRat change_modulus(const CycRat& a, std::int64_t M) {
  return CycRat(change_modulus(a.numerator(), M), a.denominator());
}

CycRat cyc_inverse(const CycRat& a) {
  require(!a.is_zero(), ErrorCode::DivisionByZero, "cyc_inverse of zero");
  const std::int64_t m = a.modulus();
  RatPoly r0(cyclotomic_poly(m));
  RatPoly r1(a.numerator().coeffs().empty() ? std::vector<mpq_class>{}
                                            : [&] {
                                                std::vector<mpq_class> v;
                                                for (const auto& c : a.numerator().coeffs())
                                                  v.emplace_back(c);
                                                return v;
                                              }());
  RatPoly s0, s1(std::vector<mpq_class>{mpq_class(1)});
  while (r1.degree() > 0) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  require(!r1.is_zero(), ErrorCode::DivisionByZero, "cyc_inverse: element not invertible");
  const mpq_class c = r1.coeffs()[0];
  // a_num * s1 = c (mod Phi), so a^{-1} = den * s1 / c.
  std::vector<mpq_class> sc = s1.coeffs();
  sc.resize(a.numerator().coeffs().size());
  mpq_class factor = mpq_class(a.denominator()) / c;
  for (auto& x : sc) x *= factor;
  return CycRat(m, sc);
}

// ---------------------------------------------------------------- embedding

ComplexBall embed(const CycInt& a, mpfr_prec_t prec) {
  const std::size_t d = a.coeffs().size();
  mpfr_prec_t wp = prec + 8;
  ComplexBall acc(wp);
  for (std::size_t i = 0; i < d; ++i) {
    const mpz_class& c = a.coeffs()[i];
    if (c == 0) continue;
    ComplexBall term = ComplexBall::from_integer(c, wp);
    if (i > 0) term = term * root_of_unity(static_cast<long>(i), static_cast<long>(a.modulus()), wp);
    acc += term;
  }
  return acc;
}

ComplexBall embed(const CycRat& a, mpfr_prec_t prec) {
  ComplexBall b = embed(a.numerator(), prec);
  if (a.denominator() == 1) return b;
  mpq_class inv(mpz_class(1), a.denominator());
  return scale(b, inv);
}

namespace {
template <class T>
ComplexBall embed_target(const T& a, double target) {
  mpfr_prec_t prec = 64;
  for (;;) {
    ComplexBall b = embed(a, prec);
    if (b.radius() <= target) return b;
    require(prec < (mpfr_prec_t{1} << 22), ErrorCode::InvariantViolation,
            "embed: radius target unreachable");
    prec *= 2;
  }
}
}  // namespace

ComplexBall embed_to_radius(const CycInt& a, double target) { return embed_target(a, target); }
ComplexBall embed_to_radius(const CycRat& a, double target) { return embed_target(a, target); }

// ---------------------------------------------------------------- bounds

mpz_class coefficient_sum_mod(const CycInt& a, const mpz_class& p) {
  require(p > 0, ErrorCode::InvalidArgument, "coefficient_sum_mod: p must be positive");
  mpz_class s = 0;
  for (const auto& c : a.coeffs()) s += c;
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpq_class separation_bound(const mpz_class& A, std::int64_t m) {
  require(A >= 1, ErrorCode::InvalidArgument, "separation_bound: A must be >= 1");
  const std::int64_t phi = totient(m);
  mpz_class base = 2 * A * phi + 1;
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(phi - 1));
  return mpq_class(mpz_class(1), den);
}

mpz_class factorial(std::int64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(std::max<std::int64_t>(n, 0)));
  return f;
}

namespace {
std::int64_t ceil_log2(const mpz_class& a) {
  if (a <= 1) return 0;
  mpz_class b = a - 1;
  return static_cast<std::int64_t>(mpz_sizeinbase(b.get_mpz_t(), 2));
}
}  // namespace

CoeffBound rep_coeff_bound(std::int64_t m, std::int64_t n) {
  require(m >= 2 && n >= 1, ErrorCode::InvalidArgument, "rep_coeff_bound: need m >= 2, n >= 1");
  const std::int64_t phi = totient(m);
  const mpz_class nf = factorial(n);
  // N = floor(exp(d(m) log(m) / 2)) = floor(sqrt(m^d(m))).
  mpz_class md, N;
  mpz_ui_pow_ui(md.get_mpz_t(), static_cast<unsigned long>(m),
                static_cast<unsigned long>(divisor_count(m)));
  mpz_sqrt(N.get_mpz_t(), md.get_mpz_t());
  // Quotient of a degree m-1 polynomial by Phi_m: sum |q_i| <=
  // (1 + N)^{m-1-phi} * sum_{i >= phi} |s_i|, and |s_i| <= n!.
  mpz_class qsum;
  mpz_class onep = 1 + N;
  mpz_pow_ui(qsum.get_mpz_t(), onep.get_mpz_t(), static_cast<unsigned long>(m - 1 - phi));
  qsum *= (m - phi) * nf;
  CoeffBound b;
  b.value = nf + qsum * N;
  b.bits = ceil_log2(b.value);
  return b;
}

CoeffBound reduction_coeff_bound(std::int64_t m, std::int64_t n) {
  require(m >= 2 && n >= 1, ErrorCode::InvalidArgument,
          "reduction_coeff_bound: need m >= 2, n >= 1");
  mpz_class worst = 0;
  for (std::int64_t k = 0; k < m; ++k) {
    CycInt r = CycInt::zeta_power(m, k);
    for (const auto& c : r.coeffs()) worst = std::max<mpz_class>(worst, abs(c));
  }
  CoeffBound b;
  b.value = factorial(n) * worst;
  b.bits = ceil_log2(b.value);
  return b;
}

}  // namespace qperm
