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

#include "qperm/selfreduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qperm/error.hpp"

namespace qperm {

std::string dist_family_name(DistFamily f) {
  return f == DistFamily::complex_gaussian ? "complex_gaussian" : "truncated_uniform";
}

DistFamily parse_dist_family(const std::string& s) {
  if (s == "complex_gaussian" || s == "gaussian") return DistFamily::complex_gaussian;
  if (s == "truncated_uniform" || s == "uniform") return DistFamily::truncated_uniform;
  fail(ErrorCode::ParseError, "unknown distribution '" + s + "'");
}

double sample_base(DistFamily family, std::mt19937_64& rng) {
  if (family == DistFamily::complex_gaussian) return std::normal_distribution<double>(0.0, 1.0)(rng);
  const double a = std::sqrt(3.0);
  return std::uniform_real_distribution<double>(-a, a)(rng);
}

std::complex<double> sample_entry(const DistSpec& spec, std::mt19937_64& rng) {
  require(spec.variance >= 0.0, ErrorCode::InvalidArgument, "variance must be nonnegative");
  if (spec.variance == 0.0) return spec.mean;
  const double s = std::sqrt(spec.variance / 2.0);
  for (;;) {
    const double x = sample_base(spec.family, rng);
    const double y = sample_base(spec.family, rng);
    std::complex<double> d(s * x, s * y);
    if (!spec.truncation || std::abs(d) <= *spec.truncation) return spec.mean + d;
  }
}

mpq_class snap_dyadic(double x, int bits) {
  require(bits >= 0 && bits <= 60, ErrorCode::InvalidArgument, "discretization_bits must lie in [0, 60]");
  require(std::isfinite(x), ErrorCode::InvalidArgument, "cannot snap a non-finite value");
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), std::nearbyint(std::ldexp(x, bits)));
  mpq_class q(num, mpz_class(1) << bits);
  q.canonicalize();
  return q;
}

MatrixZ sample_matrix(const DistSpec& spec, std::size_t n, std::mt19937_64& rng) {
  Matrix<GaussRat> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::complex<double> e = sample_entry(spec, rng);
      m(i, j) = GaussRat(snap_dyadic(e.real(), spec.discretization_bits),
                         snap_dyadic(e.imag(), spec.discretization_bits));
    }
  return MatrixZ(std::move(m));
}

std::string corruption_mode_name(CorruptionMode m) {
  return m == CorruptionMode::random_field_element ? "random_field_element" : "adversarial_offset";
}

CorruptionMode parse_corruption_mode(const std::string& s) {
  if (s == "random_field_element" || s == "random") return CorruptionMode::random_field_element;
  if (s == "adversarial_offset" || s == "offset") return CorruptionMode::adversarial_offset;
  fail(ErrorCode::ParseError, "unknown corruption mode '" + s + "'");
}

NoisyValueOracle::NoisyValueOracle(RootOfUnity z, mpq_class corruption_prob, CorruptionMode mode,
                                   std::uint64_t seed, KernelCaps caps)
    : root_(z), prob_(std::move(corruption_prob)), mode_(mode), rng_(seed), caps_(caps),
      field_m_(std::lcm<std::int64_t>(4, z.m)) {
  validate_root(root_);
  require(prob_ >= 0 && prob_ < 1, ErrorCode::InvalidArgument, "corruption probability must lie in [0, 1)");
}

CycRat NoisyValueOracle::exact(const MatrixZ& x) const {
  InvPoly<GaussRat> p = invpoly_subset_dp(x.as_gaussian(), caps_);
  return evaluate_at_power(p, field_m_, root_.k * (field_m_ / root_.m));
}

CycRat NoisyValueOracle::query(const MatrixZ& x) {
  ++queries_;
  CycRat truth = exact(x);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  if (u >= prob_.get_d()) return truth;
  ++corrupted_;
  if (mode_ == CorruptionMode::adversarial_offset) return truth + CycRat::constant(field_m_, 1);
  const std::size_t phi = static_cast<std::size_t>(totient(field_m_));
  std::uniform_int_distribution<long> coeff(-1000, 1000);
  for (;;) {
    std::vector<mpq_class> c(phi);
    for (auto& v : c) v = coeff(rng_);
    CycRat r(field_m_, c);
    if (!(r == truth)) return r;
  }
}

CycRat FieldPoly::eval(const CycRat& x) const {
  CycRat acc(x.modulus());
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

namespace {

// Solves A u = b over the field; free unknowns are set to zero. Returns false
// when the system is inconsistent.
bool solve_linear(std::vector<std::vector<CycRat>> a, std::vector<CycRat> b, std::vector<CycRat>& u) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const CycRat inv = CycRat::constant(a[r][c].modulus(), 1) / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const CycRat f = a[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return false;
  const std::int64_t m = b.empty() ? 1 : b[0].modulus();
  u.assign(cols, CycRat(m));
  for (std::size_t i = 0; i < r; ++i) u[pivot_col[i]] = b[i];
  return true;
}

}  // namespace

namespace {

// Product of the non-trivial Galois conjugates of a, and the norm a * a^*.
struct NormData {
  CycInt star;
  mpz_class norm;
};

NormData norm_data(const CycInt& a) {
  const std::int64_t m = a.modulus();
  CycInt star = CycInt::constant(m, 1);
  for (std::int64_t k = 2; k < std::max<std::int64_t>(m, 2); ++k)
    if (std::gcd(k, m) == 1) star = star * cyc_galois(a, k);
  const CycInt n = a * star;
  return {std::move(star), n.coeffs()[0]};
}

// a / p for p dividing a in Z[zeta].
CycInt exact_div(const CycInt& a, const NormData& p) {
  std::vector<mpz_class> c = (a * p.star).coeffs();
  for (auto& v : c) {
    require(mpz_divisible_p(v.get_mpz_t(), p.norm.get_mpz_t()) != 0, ErrorCode::InvariantViolation,
            "fraction-free elimination: inexact division");
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.norm.get_mpz_t());
  }
  return CycInt(a.modulus(), std::move(c));
}

// Fraction-free (Bareiss) elimination over Z[zeta]; free unknowns are zero.
bool solve_integral(std::vector<std::vector<CycInt>> a, std::vector<CycInt> b, std::vector<CycRat>& u) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  const std::int64_t m = b.empty() ? 1 : b[0].modulus();
  NormData prev{CycInt::constant(m, 1), 1};
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const CycInt f = a[i][c];
      for (std::size_t k = c + 1; k < cols; ++k) a[i][k] = exact_div(a[r][c] * a[i][k] - f * a[r][k], prev);
      b[i] = exact_div(a[r][c] * b[i] - f * b[r], prev);
      a[i][c] = CycInt(m);
    }
    prev = norm_data(a[r][c]);
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return false;
  u.assign(cols, CycRat(m));
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t c = pivot_col[i];
    CycRat acc(b[i]);
    for (std::size_t k = c + 1; k < cols; ++k)
      if (!u[k].is_zero() && !a[i][k].is_zero()) acc -= CycRat(a[i][k]) * u[k];
    const NormData nd = norm_data(a[i][c]);
    u[c] = acc * CycRat(nd.star, nd.norm);
  }
  return true;
}

std::optional<std::vector<mpz_class>> integer_nodes(const std::vector<CycRat>& xs) {
  std::vector<mpz_class> out;
  for (const auto& x : xs) {
    if (!x.is_integral()) return std::nullopt;
    const auto& c = x.numerator().coeffs();
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return std::nullopt;
    out.push_back(c[0]);
  }
  return out;
}

// Integer nodes: clear denominators once, build the reduced system with
// integer divided-difference weights and solve it fraction-free.
std::optional<FieldPoly> decode_integral(const std::vector<mpz_class>& xi, const std::vector<CycRat>& ys,
                                         const std::vector<std::vector<CycInt>>& yx, const mpz_class& den,
                                         std::size_t d, std::size_t e) {
  const std::size_t L = xi.size();
  const std::int64_t m = ys[0].modulus();
  const std::size_t nn = e + d + 1;
  const std::size_t rows = L - nn;
  std::vector<std::vector<CycInt>> a(rows, std::vector<CycInt>(e, CycInt(m)));
  std::vector<CycInt> b(rows, CycInt(m));
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<mpz_class> pj(nn + 1, 1);
    mpz_class w = 1;
    for (std::size_t j = 0; j <= nn; ++j) {
      for (std::size_t k = 0; k <= nn; ++k)
        if (k != j) pj[j] *= xi[r + j] - xi[r + k];
      mpz_lcm(w.get_mpz_t(), w.get_mpz_t(), pj[j].get_mpz_t());
    }
    for (std::size_t j = 0; j <= nn; ++j) {
      const mpz_class om = w / pj[j];
      for (std::size_t i = 0; i < e; ++i) a[r][i] += om * yx[r + j][i];
      b[r] = b[r] - om * yx[r + j][e];
    }
  }
  std::vector<CycRat> loc;
  if (e > 0) {
    if (!solve_integral(a, b, loc)) return std::nullopt;
  } else {
    for (const auto& v : b)
      if (!v.is_zero()) return std::nullopt;
  }
  loc.push_back(CycRat::constant(m, 1));

  std::vector<std::size_t> pick;
  for (std::size_t j = 0; j < L && pick.size() < d + 1; ++j) {
    CycRat ev(m);
    const CycRat x = CycRat::constant(m, mpq_class(xi[j]));
    for (std::size_t i = loc.size(); i-- > 0;) ev = ev * x + loc[i];
    if (!ev.is_zero()) pick.push_back(j);
  }
  if (pick.size() < d + 1) return std::nullopt;
  std::vector<std::vector<CycInt>> v(d + 1, std::vector<CycInt>(d + 1, CycInt(m)));
  std::vector<CycInt> rhs;
  for (std::size_t r = 0; r <= d; ++r) {
    mpz_class pw = 1;
    for (std::size_t i = 0; i <= d; ++i) {
      v[r][i] = CycInt::constant(m, pw);
      pw *= xi[pick[r]];
    }
    rhs.push_back(yx[pick[r]][0]);
  }
  std::vector<CycRat> q;
  if (!solve_integral(v, rhs, q)) return std::nullopt;
  // yx carries the common denominator D of the values; undo it.
  const CycRat scale_back = CycRat::constant(m, mpq_class(mpz_class(1), den));
  for (auto& c : q) c = c * scale_back;
  FieldPoly out{std::move(q)};
  std::size_t agree = 0;
  for (std::size_t i = 0; i < L; ++i)
    if (out.eval(CycRat::constant(m, mpq_class(xi[i]))) == ys[i]) ++agree;
  if (2 * agree <= L + d) return std::nullopt;
  return out;
}

// Key equation N(x_j) - y_j (E(x_j) - x_j^e) = y_j x_j^e with E monic of
// degree e. The N block is a Vandermonde matrix; divided differences of order
// e + d + 1 over windows of consecutive nodes span its left kernel, which
// leaves a small system in the coefficients of E. Wherever E(x_j) != 0 the
// equation forces y_j = q(x_j), so q is interpolated from such points and
// accepted only with more than (L + d) / 2 agreements.
std::optional<FieldPoly> decode_with(const std::vector<CycRat>& xs, const std::vector<CycRat>& ys,
                                     const std::vector<std::vector<CycRat>>& yx, std::size_t d, std::size_t e) {
  const std::size_t L = xs.size();
  const std::int64_t m = xs[0].modulus();
  const CycRat one = CycRat::constant(m, 1);
  const std::size_t nn = e + d + 1;
  const std::size_t rows = L - nn;
  std::vector<std::vector<CycRat>> a(rows, std::vector<CycRat>(e, CycRat(m)));
  std::vector<CycRat> b(rows, CycRat(m));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = r; j <= r + nn; ++j) {
      CycRat prod = one;
      for (std::size_t k = r; k <= r + nn; ++k)
        if (k != j) prod = prod * (xs[j] - xs[k]);
      const CycRat w = one / prod;
      for (std::size_t i = 0; i < e; ++i) a[r][i] += w * yx[j][i];
      b[r] -= w * yx[j][e];
    }
  }
  std::vector<CycRat> loc;
  if (e > 0) {
    if (!solve_linear(a, b, loc)) return std::nullopt;
  } else {
    for (const auto& v : b)
      if (!v.is_zero()) return std::nullopt;
  }
  loc.push_back(one);

  std::vector<std::size_t> pick;
  for (std::size_t j = 0; j < L && pick.size() < d + 1; ++j) {
    CycRat ev(m);
    for (std::size_t i = loc.size(); i-- > 0;) ev = ev * xs[j] + loc[i];
    if (!ev.is_zero()) pick.push_back(j);
  }
  if (pick.size() < d + 1) return std::nullopt;
  std::vector<std::vector<CycRat>> v(d + 1, std::vector<CycRat>(d + 1, CycRat(m)));
  std::vector<CycRat> rhs;
  for (std::size_t r = 0; r <= d; ++r) {
    CycRat pw = one;
    for (std::size_t i = 0; i <= d; ++i) {
      v[r][i] = pw;
      pw = pw * xs[pick[r]];
    }
    rhs.push_back(ys[pick[r]]);
  }
  std::vector<CycRat> q;
  if (!solve_linear(v, rhs, q)) return std::nullopt;
  FieldPoly out{std::move(q)};
  std::size_t agree = 0;
  for (std::size_t i = 0; i < L; ++i)
    if (out.eval(xs[i]) == ys[i]) ++agree;
  if (2 * agree <= L + d) return std::nullopt;
  return out;
}

}  // namespace

FieldPoly berlekamp_welch(const std::vector<CycRat>& xs, const std::vector<CycRat>& ys, std::size_t d) {
  const std::size_t L = xs.size();
  require(ys.size() == L, ErrorCode::InvalidArgument, "berlekamp_welch: xs and ys differ in length");
  require(L >= d + 1, ErrorCode::InvalidArgument, "berlekamp_welch: need at least d + 1 points");
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j)
      require(!(xs[i] == xs[j]), ErrorCode::InvalidArgument, "berlekamp_welch: nodes must be distinct");
  const std::size_t e_max = (L - d - 1) / 2;
  if (auto xi = integer_nodes(xs)) {
    mpz_class den = 1;
    for (const auto& y : ys) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), y.denominator().get_mpz_t());
    std::vector<std::vector<CycInt>> yx(L);
    for (std::size_t j = 0; j < L; ++j) {
      CycInt v = mpz_class(den / ys[j].denominator()) * ys[j].numerator();
      for (std::size_t i = 0; i <= e_max; ++i) {
        yx[j].push_back(v);
        v = mpz_class((*xi)[j]) * v;
      }
    }
    for (std::size_t e = 0;; e = std::min(e_max, e + 4)) {
      if (auto q = decode_integral(*xi, ys, yx, den, d, e)) return *q;
      if (e == e_max) break;
    }
    fail(ErrorCode::DecodingFailure, "berlekamp_welch: no polynomial agrees with more than (L + d) / 2 points");
  }
  std::vector<std::vector<CycRat>> yx(L);
  for (std::size_t j = 0; j < L; ++j) {
    CycRat pw = CycRat::constant(xs[0].modulus(), 1);
    for (std::size_t i = 0; i <= e_max; ++i) {
      yx[j].push_back(ys[j] * pw);
      pw = pw * xs[j];
    }
  }
  // Smaller locator degrees first; any accepted answer is the unique one, and
  // the last rung is the full degree floor((L - d - 1) / 2).
  for (std::size_t e = 0;; e = std::min(e_max, e + 4)) {
    if (auto q = decode_with(xs, ys, yx, d, e)) return *q;
    if (e == e_max) break;
  }
  fail(ErrorCode::DecodingFailure, "berlekamp_welch: no polynomial agrees with more than (L + d) / 2 points");
}

SelfReduceResult self_reduce(const MatrixZ& mat, NoisyValueOracle& oracle, const SelfReduceOptions& opt) {
  require(mat.domain() == Domain::binary, ErrorCode::InvalidArgument, "self_reduce needs a binary matrix");
  require(opt.delta > 0 && opt.delta <= 1, ErrorCode::InvalidArgument, "self_reduce: delta must lie in (0, 1]");
  require(opt.m1 > 0 && opt.m2 > 0, ErrorCode::InvalidArgument, "self_reduce: autocorrelation constants must be positive");
  const std::size_t n = mat.size();
  const std::int64_t fm = oracle.field_modulus();
  SelfReduceResult res;

  mpq_class ratio = mpq_class(static_cast<unsigned long>(n)) / opt.delta;
  mpz_class L = ratio.get_num() / ratio.get_den();
  if (L * ratio.get_den() != ratio.get_num()) L += 1;
  res.points = L.get_ui();
  const mpq_class n2 = mpq_class(static_cast<unsigned long>(n * n));
  res.eps = opt.delta / ((4 * n2 * opt.m1 + 4 * n2 * opt.m2) * mpq_class(L));
  if (opt.repetitions) {
    res.repetitions_planned = opt.repetitions;
  } else {
    mpq_class r = 1 / (opt.delta * opt.delta);
    mpz_class c = r.get_num() / r.get_den();
    if (c * r.get_den() != r.get_num()) c += 1;
    res.repetitions_planned = c.get_ui();
  }

  std::mt19937_64 rng(opt.seed);
  const Matrix<GaussRat> target = mat.as_gaussian();
  // Nodes are l = 1..L; the decoded r(s) = q(eps s) is read at s = 1/eps.
  std::vector<CycRat> xs;
  for (std::uint64_t l = 1; l <= res.points; ++l) xs.push_back(CycRat::constant(fm, mpq_class(l)));
  const CycRat at_one = CycRat::constant(fm, 1 / res.eps);

  std::vector<std::pair<CycRat, std::uint64_t>> tally;
  for (std::uint64_t rep = 0; rep < res.repetitions_planned; ++rep) {
    const MatrixZ y = sample_matrix(opt.dist, n, rng);
    const Matrix<GaussRat>& yg = y.gaussian();
    const std::uint64_t corrupted0 = oracle.corrupted_count();
    std::vector<CycRat> ys;
    for (std::uint64_t l = 1; l <= res.points; ++l) {
      const mpq_class t = res.eps * mpq_class(l);
      Matrix<GaussRat> xt(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const GaussRat& a = yg(i, j);
          const GaussRat& b = target(i, j);
          xt(i, j) = GaussRat((1 - t) * a.re + t * b.re, (1 - t) * a.im + t * b.im);
        }
      ys.push_back(oracle.query(MatrixZ(std::move(xt))));
    }
    SelfReduceVote vote;
    vote.corrupted = oracle.corrupted_count() - corrupted0;
    try {
      vote.value = berlekamp_welch(xs, ys, n).eval(at_one);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DecodingFailure) throw;
    }
    if (vote.value) {
      auto it = std::find_if(tally.begin(), tally.end(), [&](const auto& p) { return p.first == *vote.value; });
      if (it == tally.end())
        tally.emplace_back(*vote.value, 1);
      else
        ++it->second;
    } else {
      ++res.abstentions;
    }
    res.votes.push_back(std::move(vote));
    if (opt.early_stop && !tally.empty()) {
      std::uint64_t best = 0, second = 0;
      for (const auto& p : tally) {
        if (p.second > best) {
          second = best;
          best = p.second;
        } else if (p.second > second) {
          second = p.second;
        }
      }
      if (best > second + (res.repetitions_planned - rep - 1)) break;
    }
  }
  require(!tally.empty(), ErrorCode::AllFailed, "self_reduce: every repetition failed to decode");
  auto win = tally.begin();
  for (auto it = tally.begin(); it != tally.end(); ++it)
    if (it->second > win->second) win = it;
  res.value = win->first;
  res.winner_votes = win->second;
  return res;
}

double AdditiveSolver::additive_bound(std::size_t n) const {
  return eps_prime * std::sqrt(std::tgamma(static_cast<double>(n) + 1.0));
}

AdditiveSolver additive_from_multiplicative(MultiplicativeSolver inner, double eps_prime, double delta_prime) {
  require(eps_prime > 0.0 && delta_prime > 0.0 && delta_prime <= 1.0, ErrorCode::InvalidArgument,
          "additive_from_multiplicative: need eps' > 0 and delta' in (0, 1]");
  AdditiveSolver s;
  s.inner = std::move(inner);
  s.eps_prime = eps_prime;
  s.delta_prime = delta_prime;
  s.k = std::sqrt(2.0 / delta_prime);
  s.inner_eps = eps_prime / s.k;
  s.inner_delta = delta_prime / 2.0;
  return s;
}

}  // namespace qperm
