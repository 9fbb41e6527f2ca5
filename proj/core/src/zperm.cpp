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

#include "qperm/zperm.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <thread>

#include "qperm/error.hpp"

namespace qperm {

namespace {

constexpr std::size_t kMaxBinom = 64;

const std::array<std::array<std::uint64_t, kMaxBinom + 1>, kMaxBinom + 1>& binom_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxBinom + 1>, kMaxBinom + 1> t{};
    for (std::size_t n = 0; n <= kMaxBinom; ++n) {
      t[n][0] = 1;
      for (std::size_t k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

// Ring adaptors for the kernels.
template <class R>
struct Ring;

template <>
struct Ring<std::uint64_t> {
  static bool is_zero(std::uint64_t a) { return a == 0; }
  static void addmul(std::uint64_t& d, std::uint64_t a, std::uint64_t b) { d += a * b; }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return a * b; }
};

template <>
struct Ring<mpz_class> {
  static bool is_zero(const mpz_class& a) { return a == 0; }
  static void addmul(mpz_class& d, const mpz_class& a, const mpz_class& b) {
    mpz_addmul(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
};

template <>
struct Ring<GaussRat> {
  static bool is_zero(const GaussRat& a) { return a.is_zero(); }
  static void addmul(GaussRat& d, const GaussRat& a, const GaussRat& b) { d += a * b; }
  static GaussRat mul(const GaussRat& a, const GaussRat& b) { return a * b; }
};

template <>
struct Ring<ComplexBall> {
  static bool is_zero(const ComplexBall& a) {
    return a.radius() == 0.0 && a.re().is_zero() && a.im().is_zero();
  }
  static void addmul(ComplexBall& d, const ComplexBall& a, const ComplexBall& b) { d += a * b; }
  static ComplexBall mul(const ComplexBall& a, const ComplexBall& b) { return a * b; }
};

template <>
struct Ring<DoubleBall> {
  static bool is_zero(const DoubleBall& a) { return a.rad == 0.0 && a.mid == std::complex<double>(0, 0); }
  static void addmul(DoubleBall& d, const DoubleBall& a, const DoubleBall& b) { d += a * b; }
  static DoubleBall mul(const DoubleBall& a, const DoubleBall& b) { return a * b; }
};

template <class R>
R ring_zero(const R& like);
template <>
std::uint64_t ring_zero(const std::uint64_t&) { return 0; }
template <>
mpz_class ring_zero(const mpz_class&) { return 0; }
template <>
GaussRat ring_zero(const GaussRat&) { return GaussRat(); }
template <>
ComplexBall ring_zero(const ComplexBall& like) { return ComplexBall(like.precision()); }
template <>
DoubleBall ring_zero(const DoubleBall&) { return DoubleBall(); }

template <class R>
R ring_one(const R& like) {
  if constexpr (std::is_same_v<R, ComplexBall>) {
    return ComplexBall::from_integer(1, like.precision());
  } else if constexpr (std::is_same_v<R, DoubleBall>) {
    return DoubleBall(std::complex<double>(1.0, 0.0));
  } else {
    return R(1);
  }
}

std::uint64_t unrank_colex(std::uint64_t rank, std::size_t s) {
  std::uint64_t mask = 0;
  for (std::size_t i = s; i >= 1; --i) {
    std::size_t c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    mask |= std::uint64_t{1} << c;
    rank -= binomial(c, i);
  }
  return mask;
}

std::uint64_t next_same_popcount(std::uint64_t v) {
  std::uint64_t c = v & (~v + 1);
  std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

// Runs body(lo, hi) over [0, count) on up to `jobs` threads.
template <class F>
void parallel_ranges(std::uint64_t count, unsigned jobs, F&& body) {
  if (jobs <= 1 || count < 4096) {
    body(std::uint64_t{0}, count);
    return;
  }
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (count + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    std::uint64_t lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& w : workers) w.join();
}

// Column-subset DP over layers of fixed popcount s. f(S) holds the
// inversion polynomial of the bottom |S| rows restricted to columns S:
// f(S) = sum_k X[n-|S|][c_k] z^k f(S \ c_k), c_k the k-th smallest column.
// `Width` selects the polynomial (1 = scalar evaluation with zpow weights).
template <class R>
std::vector<R> subset_dp(const Matrix<R>& x, const std::vector<R>* zpow, unsigned jobs,
                         const R& like) {
  const std::size_t n = x.size();
  const bool scalar = zpow != nullptr;
  const R zero = ring_zero(like);
  std::vector<R> prev(1, ring_one(like));
  for (std::size_t s = 1; s <= n; ++s) {
    const std::size_t row = n - s;
    const std::size_t len_prev = scalar ? 1 : binomial(s - 1, 2) + 1;
    const std::size_t len = scalar ? 1 : binomial(s, 2) + 1;
    const std::uint64_t count = binomial(n, s);
    std::vector<R> cur(count * len, zero);
    parallel_ranges(count, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
      std::uint64_t mask = unrank_colex(lo, s);
      std::array<std::size_t, 64> cols{};
      std::array<std::uint64_t, 65> prefix_a{}, suffix_b{};
      for (std::uint64_t r = lo; r < hi; ++r, mask = next_same_popcount(mask)) {
        std::uint64_t m = mask;
        for (std::size_t i = 0; i < s; ++i) {
          cols[i] = static_cast<std::size_t>(std::countr_zero(m));
          m &= m - 1;
        }
        prefix_a[0] = 0;
        for (std::size_t i = 0; i < s; ++i) prefix_a[i + 1] = prefix_a[i] + binomial(cols[i], i + 1);
        suffix_b[s] = 0;
        for (std::size_t i = s; i-- > 0;) suffix_b[i] = suffix_b[i + 1] + binomial(cols[i], i);
        R* dst = cur.data() + r * len;
        for (std::size_t k = 0; k < s; ++k) {
          const R& w = x(row, cols[k]);
          if (Ring<R>::is_zero(w)) continue;
          const std::uint64_t rr = prefix_a[k] + suffix_b[k + 1];
          const R* src = prev.data() + rr * len_prev;
          if (scalar) {
            Ring<R>::addmul(dst[0], Ring<R>::mul(w, (*zpow)[k]), src[0]);
          } else {
            for (std::size_t j = 0; j < len_prev; ++j) {
              if (!Ring<R>::is_zero(src[j])) Ring<R>::addmul(dst[j + k], w, src[j]);
            }
          }
        }
      }
    });
    prev = std::move(cur);
  }
  return prev;
}

template <class R>
R sample_entry(const Matrix<R>& x) {
  if constexpr (std::is_same_v<R, ComplexBall>) {
    mpfr_prec_t p = kDefaultPrecision;
    if (x.size() > 0) p = x(0, 0).precision();
    return ComplexBall(p);
  } else {
    return R();
  }
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  require(n <= kMaxBinom, ErrorCode::CapExceeded, "binomial table limit exceeded");
  return binom_table()[n][k];
}

Permutation::Permutation(std::vector<std::size_t> img) : images(std::move(img)) {
  std::vector<bool> seen(images.size(), false);
  for (std::size_t v : images) {
    require(v < images.size() && !seen[v], ErrorCode::InvalidArgument, "not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& img) {
  std::vector<std::size_t> v;
  v.reserve(img.size());
  for (std::size_t x : img) {
    require(x >= 1, ErrorCode::InvalidArgument, "one-based image must be >= 1");
    v.push_back(x - 1);
  }
  return Permutation(std::move(v));
}

std::size_t inversion_number(const std::vector<std::size_t>& images) {
  std::size_t inv = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] > images[j]) ++inv;
  return inv;
}

std::size_t inversion_number(const Permutation& sigma) { return inversion_number(sigma.images); }

std::size_t cycle_count(const std::vector<std::size_t>& images) {
  std::vector<bool> seen(images.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = images[j]) seen[j] = true;
  }
  return cycles;
}

template <class R>
InvPoly<R> invpoly_bruteforce(const Matrix<R>& x, const KernelCaps& caps) {
  const std::size_t n = x.size();
  require(n <= caps.brute_force_cap, ErrorCode::CapExceeded,
          "invpoly_bruteforce: n exceeds brute-force cap");
  const R like = sample_entry(x);
  InvPoly<R> out;
  out.n = n;
  out.coeffs.assign(binomial(n, 2) + 1, ring_zero(like));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    R prod = ring_one(like);
    bool zero = false;
    for (std::size_t i = 0; i < n && !zero; ++i) {
      const R& e = x(i, perm[i]);
      if (Ring<R>::is_zero(e)) zero = true;
      else prod = Ring<R>::mul(prod, e);
    }
    if (zero) continue;
    out.coeffs[inversion_number(perm)] += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

template <class R>
InvPoly<R> invpoly_subset_dp(const Matrix<R>& x, const KernelCaps& caps) {
  const std::size_t n = x.size();
  require(n <= caps.dp_cap && n <= 62, ErrorCode::CapExceeded,
          "invpoly_subset_dp: n exceeds dp cap");
  InvPoly<R> out;
  out.n = n;
  out.coeffs = subset_dp<R>(x, nullptr, caps.jobs, sample_entry(x));
  return out;
}

template InvPoly<mpz_class> invpoly_bruteforce(const Matrix<mpz_class>&, const KernelCaps&);
template InvPoly<GaussRat> invpoly_bruteforce(const Matrix<GaussRat>&, const KernelCaps&);
template InvPoly<ComplexBall> invpoly_bruteforce(const Matrix<ComplexBall>&, const KernelCaps&);
template InvPoly<mpz_class> invpoly_subset_dp(const Matrix<mpz_class>&, const KernelCaps&);
template InvPoly<GaussRat> invpoly_subset_dp(const Matrix<GaussRat>&, const KernelCaps&);
template InvPoly<ComplexBall> invpoly_subset_dp(const Matrix<ComplexBall>&, const KernelCaps&);

namespace {

// Binary fast path: counts fit in 64 bits for n <= 20 (20! < 2^63).
InvPoly<mpz_class> binary_dp(const Matrix<mpz_class>& x, const KernelCaps& caps) {
  const std::size_t n = x.size();
  require(n <= caps.dp_cap, ErrorCode::CapExceeded, "invpoly_subset_dp: n exceeds dp cap");
  if (n > 20) return invpoly_subset_dp(x, caps);
  Matrix<std::uint64_t> b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = x(i, j) == 0 ? 0 : 1;
  std::vector<std::uint64_t> c = subset_dp<std::uint64_t>(b, nullptr, caps.jobs, 0);
  InvPoly<mpz_class> out;
  out.n = n;
  out.coeffs.reserve(c.size());
  for (std::uint64_t v : c) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    out.coeffs.push_back(z);
  }
  return out;
}

}  // namespace

AnyInvPoly invpoly_bruteforce(const MatrixZ& x, const KernelCaps& caps) {
  switch (x.domain()) {
    case Domain::binary:
    case Domain::integer: return invpoly_bruteforce(x.integers(), caps);
    case Domain::gaussian_rational: return invpoly_bruteforce(x.gaussian(), caps);
    case Domain::complex_float: return invpoly_bruteforce(x.as_balls(caps.precision), caps);
  }
  fail(ErrorCode::InvalidArgument, "unknown domain");
}

AnyInvPoly invpoly_subset_dp(const MatrixZ& x, const KernelCaps& caps) {
  switch (x.domain()) {
    case Domain::binary: return binary_dp(x.integers(), caps);
    case Domain::integer: return invpoly_subset_dp(x.integers(), caps);
    case Domain::gaussian_rational: return invpoly_subset_dp(x.gaussian(), caps);
    case Domain::complex_float: return invpoly_subset_dp(x.as_balls(caps.precision), caps);
  }
  fail(ErrorCode::InvalidArgument, "unknown domain");
}

InvPoly<mpz_class> invpoly_integer(const MatrixZ& x, const KernelCaps& caps) {
  require(x.is_exact_integer(), ErrorCode::InvalidArgument, "integer kernel needs an integer matrix");
  return std::get<InvPoly<mpz_class>>(invpoly_subset_dp(x, caps));
}

InvPoly<GaussRat> invpoly_gaussian(const MatrixZ& x, const KernelCaps& caps) {
  return invpoly_subset_dp(x.as_gaussian(), caps);
}

void validate_root(const RootOfUnity& z) {
  require(z.m >= 1, ErrorCode::InvalidArgument, "root order must be >= 1");
  require(std::gcd(z.k, z.m) == 1, ErrorCode::InvalidArgument,
          "root descriptor needs gcd(k, m) = 1");
}

CycInt evaluate_at_power(const InvPoly<mpz_class>& p, std::int64_t m, std::int64_t e) {
  require(m >= 1, ErrorCode::InvalidArgument, "root order must be >= 1");
  const std::int64_t k = ((e % m) + m) % m;
  std::vector<mpz_class> v(static_cast<std::size_t>(m));
  for (std::size_t l = 0; l < p.coeffs.size(); ++l) {
    if (p.coeffs[l] == 0) continue;
    v[static_cast<std::size_t>((static_cast<std::int64_t>(l % static_cast<std::size_t>(m)) * k) % m)] += p.coeffs[l];
  }
  return reduce_mod_phi(v, m);
}

CycRat evaluate_at_power(const InvPoly<GaussRat>& p, std::int64_t m, std::int64_t e) {
  require(m >= 1, ErrorCode::InvalidArgument, "root order must be >= 1");
  const std::int64_t M = std::lcm<std::int64_t>(4, m);
  const std::int64_t step = M / m;
  const std::int64_t k = ((e % m) + m) % m;
  std::vector<mpq_class> v(static_cast<std::size_t>(M));
  for (std::size_t l = 0; l < p.coeffs.size(); ++l) {
    const GaussRat& c = p.coeffs[l];
    if (c.is_zero()) continue;
    std::int64_t pos = (static_cast<std::int64_t>(l % static_cast<std::size_t>(m)) * k % m) * step;
    v[static_cast<std::size_t>(pos)] += c.re;
    v[static_cast<std::size_t>((pos + M / 4) % M)] += c.im;
  }
  mpz_class den = 1;
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> num(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) num[i] = v[i].get_num() * (den / v[i].get_den());
  return CycRat(reduce_mod_phi(num, M), den);
}

CycInt specialize(const InvPoly<mpz_class>& p, const RootOfUnity& z) {
  validate_root(z);
  return evaluate_at_power(p, z.m, z.k);
}

CycRat specialize(const InvPoly<GaussRat>& p, const RootOfUnity& z) {
  validate_root(z);
  return evaluate_at_power(p, z.m, z.k);
}

namespace {
template <class R, class Conv>
ComplexBall horner(const std::vector<R>& c, const ComplexBall& z, Conv conv) {
  ComplexBall acc(z.precision());
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + conv(c[i]);
  return acc;
}
}  // namespace

ComplexBall specialize(const InvPoly<mpz_class>& p, const ComplexBall& z) {
  return horner(p.coeffs, z, [&](const mpz_class& c) { return ComplexBall::from_integer(c, z.precision()); });
}

ComplexBall specialize(const InvPoly<GaussRat>& p, const ComplexBall& z) {
  return horner(p.coeffs, z, [&](const GaussRat& c) { return to_ball(c, z.precision()); });
}

ComplexBall specialize(const InvPoly<ComplexBall>& p, const ComplexBall& z) {
  return horner(p.coeffs, z, [](const ComplexBall& c) { return c; });
}

CycInt per_at_root(const MatrixZ& x, const RootOfUnity& z, const KernelCaps& caps) {
  return specialize(invpoly_integer(x, caps), z);
}

CycInt normsq_at_root(const MatrixZ& x, const RootOfUnity& z, const KernelCaps& caps) {
  CycInt p = per_at_root(x, z, caps);
  return p * cyc_conj(p);
}

CycInt normsq_at_root(const MatrixZ& x, std::int64_t m, const KernelCaps& caps) {
  return normsq_at_root(x, RootOfUnity{m, 1}, caps);
}

namespace {
template <class R>
R ryser(const Matrix<R>& x, const KernelCaps& caps) {
  const std::size_t n = x.size();
  require(n <= caps.ryser_cap && n < 63, ErrorCode::CapExceeded, "per_one_ryser: n exceeds cap");
  if (n == 0) return R(1);
  std::vector<R> rowsum(n, R(0));
  R total(0);
  std::uint64_t gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < limit; ++g) {
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(g));
    const std::uint64_t next = g ^ (g >> 1);
    const bool added = (next >> j) & 1;
    gray = next;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) rowsum[i] += x(i, j);
      else rowsum[i] -= x(i, j);
    }
    R prod = rowsum[0];
    for (std::size_t i = 1; i < n; ++i) prod = prod * rowsum[i];
    if (std::popcount(gray) % 2 == 1) total -= prod;
    else total += prod;
  }
  return n % 2 == 1 ? R(-total) : total;
}
}  // namespace

mpz_class per_one_ryser(const Matrix<mpz_class>& x, const KernelCaps& caps) { return ryser(x, caps); }
GaussRat per_one_ryser(const Matrix<GaussRat>& x, const KernelCaps& caps) { return ryser(x, caps); }
GaussRat per_one_ryser(const MatrixZ& x, const KernelCaps& caps) {
  if (x.is_exact_integer()) return GaussRat(mpq_class(per_one_ryser(x.integers(), caps)));
  return per_one_ryser(x.as_gaussian(), caps);
}

ComplexBall per_z_value(const Matrix<ComplexBall>& x, const ComplexBall& z, const KernelCaps& caps) {
  const std::size_t n = x.size();
  require(n <= caps.dp_cap && n <= 62, ErrorCode::CapExceeded, "per_z_value: n exceeds dp cap");
  std::vector<ComplexBall> zpow;
  zpow.push_back(ComplexBall::from_integer(1, z.precision()));
  for (std::size_t k = 1; k < std::max<std::size_t>(n, 1); ++k) zpow.push_back(zpow.back() * z);
  return subset_dp<ComplexBall>(x, &zpow, caps.jobs, z)[0];
}

DoubleBall per_z_value(const Matrix<DoubleBall>& x, const DoubleBall& z, const KernelCaps& caps) {
  const std::size_t n = x.size();
  require(n <= caps.dp_cap && n <= 62, ErrorCode::CapExceeded, "per_z_value: n exceeds dp cap");
  std::vector<DoubleBall> zpow{DoubleBall(std::complex<double>(1.0, 0.0))};
  for (std::size_t k = 1; k < std::max<std::size_t>(n, 1); ++k) zpow.push_back(zpow.back() * z);
  return subset_dp<DoubleBall>(x, &zpow, caps.jobs, z)[0];
}

}  // namespace qperm
