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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qperm_test {

namespace {

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

template <class R, class Acc>
std::vector<Acc> enumerate(const Matrix<R>& x, Acc zero) {
  const std::size_t n = x.size();
  std::vector<Acc> out(n * (n - (n > 0)) / 2 + 1, zero);
  auto p = identity_perm(n);
  do {
    Acc term = Acc(1);
    for (std::size_t i = 0; i < n; ++i) term = term * Acc(x(i, p[i]));
    out[naive_inversions(p)] += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Exact quotient of a by monic b.
std::vector<mpz_class> poly_div(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<mpz_class> q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    const mpz_class c = a[k];
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  return q;
}

int mobius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

std::size_t naive_inversions(const std::vector<std::size_t>& p) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

std::vector<mpz_class> naive_invpoly(const Matrix<mpz_class>& x) { return enumerate<mpz_class, mpz_class>(x, 0); }

std::vector<GaussRat> naive_invpoly(const Matrix<GaussRat>& x) { return enumerate<GaussRat, GaussRat>(x, 0); }

std::vector<std::complex<double>> naive_invpoly(const Matrix<std::complex<double>>& x) {
  return enumerate<std::complex<double>, std::complex<double>>(x, 0.0);
}

mpz_class naive_per(const Matrix<mpz_class>& x) {
  mpz_class s = 0;
  for (const auto& a : naive_invpoly(x)) s += a;
  return s;
}

mpq_class rational_det(const Matrix<mpz_class>& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = x(i, j);
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::int64_t brute_totient(std::int64_t m) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= m; ++k) c += std::gcd(k, m) == 1;
  return c;
}

std::vector<mpz_class> mobius_cyclotomic(std::int64_t m) {
  std::vector<mpz_class> num{1}, den{1};
  for (std::int64_t d = 1; d <= m; ++d) {
    if (m % d) continue;
    const int mu = mobius(m / d);
    if (mu == 0) continue;
    std::vector<mpz_class> f(static_cast<std::size_t>(d) + 1, 0);
    f[0] = -1;
    f[static_cast<std::size_t>(d)] = 1;
    if (mu > 0)
      num = poly_mul(num, f);
    else
      den = poly_mul(den, f);
  }
  auto q = poly_div(num, den);
  if (q.back() < 0)
    for (auto& c : q) c = -c;
  return q;
}

std::vector<mpz_class> poly_rem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    const mpz_class c = a[k];
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  a.resize(db, 0);
  return a;
}

std::complex<long double> eval_at_root(const std::vector<mpz_class>& c, std::int64_t m) {
  std::complex<long double> s = 0;
  const long double pi = std::acos(-1.0L);
  for (std::size_t j = 0; j < c.size(); ++j)
    s += static_cast<long double>(c[j].get_d()) * std::polar(1.0L, 2 * pi * static_cast<long double>(j) / m);
  return s;
}

std::complex<long double> eval_at_root(const std::vector<mpq_class>& c, std::int64_t m) {
  std::complex<long double> s = 0;
  const long double pi = std::acos(-1.0L);
  for (std::size_t j = 0; j < c.size(); ++j)
    s += static_cast<long double>(c[j].get_d()) * std::polar(1.0L, 2 * pi * static_cast<long double>(j) / m);
  return s;
}

Matrix<mpz_class> random_binary(std::size_t n, std::mt19937_64& rng) {
  Matrix<mpz_class> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = static_cast<long>(rng() & 1);
  return x;
}

Matrix<mpz_class> random_integer(std::size_t n, long lo, long hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> u(lo, hi);
  Matrix<mpz_class> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = u(rng);
  return x;
}

Matrix<GaussRat> random_gaussian_rational(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  Matrix<GaussRat> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
      re.canonicalize();
      im.canonicalize();
      x(i, j) = GaussRat(re, im);
    }
  return x;
}

Matrix<std::complex<double>> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix<std::complex<double>> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = {g(rng), g(rng)};
  return x;
}

}  // namespace qperm_test
