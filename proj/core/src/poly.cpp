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

#include "qperm/poly.hpp"

#include <algorithm>

#include "qperm/error.hpp"

namespace qperm {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(std::size_t degree, const mpz_class& c) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(v));
}

void divmod_monic(const IntPoly& a, const IntPoly& monic, IntPoly& quot, IntPoly& rem) {
  require(!monic.is_zero() && monic.coeffs().back() == 1, ErrorCode::InvalidArgument,
          "divmod_monic: divisor is not monic");
  const long db = monic.degree();
  std::vector<mpz_class> r = a.coeffs();
  if (a.degree() < db) {
    quot = IntPoly();
    rem = a;
    return;
  }
  std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1));
  const auto& m = monic.coeffs();
  for (long i = a.degree(); i >= db; --i) {
    mpz_class c = r[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) {
      if (m[j] != 0) mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), m[j].get_mpz_t());
    }
  }
  r.resize(static_cast<std::size_t>(db));
  quot = IntPoly(std::move(q));
  rem = IntPoly(std::move(r));
}

RatPoly::RatPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly::RatPoly(const IntPoly& p) {
  for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
  trim();
}

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<mpq_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RatPoly(std::move(v));
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
  require(!b.is_zero(), ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs_;
  const long db = b.degree();
  if (a.degree() < db) {
    quot = RatPoly();
    rem = a;
    return;
  }
  std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1));
  const mpq_class lead = b.coeffs_.back();
  for (long i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    mpq_class c = r[i] / lead;
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs_[j];
  }
  r.resize(static_cast<std::size_t>(db));
  quot = RatPoly(std::move(q));
  rem = RatPoly(std::move(r));
}

}  // namespace qperm
