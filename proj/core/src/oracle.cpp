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

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qperm/error.hpp"
#include "qperm/recovery.hpp"

namespace qperm {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t a, std::uint64_t b) { return mix64(a ^ mix64(b)); }

std::uint64_t hash_mpz(const mpz_class& z, std::uint64_t h) {
  h = combine(h, static_cast<std::uint64_t>(mpz_sgn(z.get_mpz_t()) + 2));
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) h = combine(h, mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

// Depends only on the canonical value of q.
std::uint64_t hash_rational(const mpq_class& q) {
  return hash_mpz(q.get_den(), hash_mpz(q.get_num(), 0x5151));
}

std::uint64_t point_hash(std::uint64_t base, std::uint64_t hre, std::uint64_t him) {
  return combine(combine(base, hre), him);
}


}  // namespace

std::string adversary_name(Adversary a) {
  switch (a) {
    case Adversary::exact: return "exact";
    case Adversary::random_uniform_logfactor: return "random_uniform_logfactor";
    case Adversary::worst_case_alternating: return "worst_case_alternating";
  }
  return "unknown";
}

Adversary parse_adversary(const std::string& s) {
  if (s == "exact") return Adversary::exact;
  if (s == "random_uniform_logfactor" || s == "random") return Adversary::random_uniform_logfactor;
  if (s == "worst_case_alternating" || s == "alternating") return Adversary::worst_case_alternating;
  fail(ErrorCode::ParseError, "unknown adversary '" + s + "'");
}

NormSqOracle::NormSqOracle(RootOfUnity z, OracleConfig cfg, KernelCaps caps)
    : root_(z), cfg_(std::move(cfg)), caps_(caps) {
  validate_root(root_);
  require(cfg_.g >= 1, ErrorCode::InvalidArgument, "oracle factor g must be >= 1");
}

NormSqOracle NormSqOracle::clone(std::uint64_t seed) const {
  OracleConfig c = cfg_;
  c.seed = seed;
  return NormSqOracle(root_, c, caps_);
}

double NormSqOracle::envelope() const {
  double g = round_up(cfg_.g.get_d());
  return std::max(g, round_up(1.0 + kOracleEta));
}

std::uint64_t NormSqOracle::matrix_hash(const MatrixZ& x, std::size_t row, std::size_t col) const {
  std::uint64_t h = combine(cfg_.seed, x.size());
  for (const auto& e : x.integers().data()) h = hash_mpz(e, h);
  if (row != std::numeric_limits<std::size_t>::max()) h = combine(combine(h, row + 1), col + 1);
  return h;
}

double NormSqOracle::factor(std::uint64_t h) {
  if (cfg_.adversary == Adversary::exact) return 1.0;
  const double gf = std::max(cfg_.g.get_d() / (1.0 + kOracleEta), 1.0);
  if (gf == 1.0) return 1.0;
  if (!cfg_.consistent) h = combine(h, queries_);
  h = mix64(h);
  if (cfg_.adversary == Adversary::worst_case_alternating) return (h >> 63) ? gf : 1.0 / gf;
  const double u = static_cast<double>(h >> 11) * 0x1p-53;
  return std::exp((2.0 * u - 1.0) * std::log(gf));
}

namespace {
std::string entry_key(const MatrixZ& x, long row, long col) {
  std::ostringstream os;
  os << x.size() << ':' << row << ':' << col << ':';
  for (const auto& e : x.integers().data()) os << e.get_str() << ',';
  return os.str();
}
}  // namespace

NormSqOracle::Entry& NormSqOracle::per_entry(const MatrixZ& x) {
  std::string key = entry_key(x, -1, -1);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Entry e;
  e.value = per_at_root(x, root_, caps_);
  return cache_.emplace(key, std::move(e)).first->second;
}

NormSqOracle::Entry& NormSqOracle::cofactor_entry(const MatrixZ& x, std::size_t row, std::size_t col) {
  std::string key = entry_key(x, static_cast<long>(row), static_cast<long>(col));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  // Per_z is affine in X_{row,col}: coefficient = Per(X_rc = 1) - Per(X_rc = 0).
  Matrix<mpz_class> one = x.integers(), zero = x.integers();
  one(row, col) = 1;
  zero(row, col) = 0;
  Entry e;
  e.value = per_at_root(MatrixZ::integer(one), root_, caps_) - per_at_root(MatrixZ::integer(zero), root_, caps_);
  return cache_.emplace(key, std::move(e)).first->second;
}

const CycInt& NormSqOracle::exact_per(const MatrixZ& x) { return per_entry(x).value; }

const CycInt& NormSqOracle::exact_cofactor(const MatrixZ& x, std::size_t row, std::size_t col) {
  return cofactor_entry(x, row, col).value;
}

const ComplexBall& NormSqOracle::entry_ball(Entry& e, mpfr_prec_t prec) {
  if (!e.has_ball || e.ball.precision() < prec) {
    e.ball = embed(e.value, prec);
    e.has_ball = true;
  }
  return e.ball;
}

Real NormSqOracle::truth(const MatrixZ& x, const EntryShift* shift) {
  Entry& p = per_entry(x);
  Entry* c = nullptr;
  if (shift != nullptr) c = &cofactor_entry(x, shift->row, shift->col);
  bool zero_checked = false;
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    require(prec <= (mpfr_prec_t{1} << 20), ErrorCode::InvariantViolation,
            "oracle: precision escalation did not converge");
    ComplexBall v = entry_ball(p, prec);
    if (c != nullptr) v = v - to_ball(shift->t, prec) * entry_ball(*c, prec);
    Real lo(prec), hi(prec);
    v.abs_sq_bounds(lo, hi);
    if (lo.is_zero()) {
      if (!zero_checked) {
        zero_checked = true;
        bool is_zero;
        if (c == nullptr || c->value.is_zero()) {
          is_zero = p.value.is_zero();
        } else {
          const std::int64_t M = std::lcm<std::int64_t>(4, root_.m);
          CycRat t = CycRat::constant(M, shift->t.re) +
                     CycRat::constant(M, shift->t.im) * CycRat(CycInt::zeta_power(M, M / 4));
          is_zero = change_modulus(CycRat(p.value), M) == t * change_modulus(CycRat(c->value), M);
        }
        if (is_zero) return Real(prec);
      }
      continue;
    }
    // Relative width of [lo, hi] at most eta / 4.
    Real width(prec), tol(prec);
    mpfr_sub(width.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_mul_d(tol.get(), lo.get(), kOracleEta / 4, MPFR_RNDD);
    if (mpfr_cmp(width.get(), tol.get()) <= 0) {
      Real mid(prec);
      mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
      mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
      return mid;
    }
  }
}

Real NormSqOracle::query(const MatrixZ& x) {
  require(x.is_exact_integer(), ErrorCode::InvalidArgument, "oracle queries need a binary base matrix");
  ++queries_;
  Real t = truth(x, nullptr);
  if (t.is_zero()) return t;
  const std::uint64_t h = matrix_hash(x, std::numeric_limits<std::size_t>::max(), 0);
  mpfr_mul_d(t.get(), t.get(), factor(h), MPFR_RNDN);
  return t;
}

Real NormSqOracle::query(const MatrixZ& x, const EntryShift& shift) {
  require(shift.row < x.size() && shift.col < x.size(), ErrorCode::InvalidArgument,
          "oracle: shift outside the matrix");
  if (shift.t.is_zero()) return query(x);
  require(x.is_exact_integer(), ErrorCode::InvalidArgument, "oracle queries need a binary base matrix");
  ++queries_;
  Real t = truth(x, &shift);
  if (t.is_zero()) return t;
  const std::uint64_t h = point_hash(matrix_hash(x, shift.row, shift.col), hash_rational(shift.t.re),
                                     hash_rational(shift.t.im));
  mpfr_mul_d(t.get(), t.get(), factor(h), MPFR_RNDN);
  return t;
}

Real NormSqOracle::query(const MatrixZ& x, const std::vector<EntryShift>& shifts) {
  require(shifts.size() <= 1, ErrorCode::ShiftNotSupported, "oracle accepts at most one shifted entry");
  if (shifts.empty()) return query(x);
  return query(x, shifts[0]);
}

GridResponse NormSqOracle::query_grid(const MatrixZ& x, std::size_t row, std::size_t col,
                                      const GaussRat& center, const mpq_class& step, long half_width) {
  require(x.is_exact_integer(), ErrorCode::InvalidArgument, "oracle queries need a binary base matrix");
  require(half_width >= 0 && step > 0, ErrorCode::InvalidArgument, "oracle grid: bad geometry");
  const long h = half_width;
  const std::size_t side = static_cast<std::size_t>(2 * h + 1);
  GridResponse out;
  out.half_width = h;
  out.values.assign(side * side, 0.0);
  queries_ += side * side;

  Entry& p = per_entry(x);
  Entry& c = cofactor_entry(x, row, col);
  if (p.value.is_zero() && c.value.is_zero()) return out;

  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  // D = P - center C, E = step C, accurate relative to the grid magnitude.
  mpfr_prec_t prec = 128;
  ComplexBall d, e;
  double m_all = 0.0;
  for (;; prec *= 2) {
    require(prec <= (mpfr_prec_t{1} << 16), ErrorCode::InvariantViolation,
            "oracle grid: precision escalation did not converge");
    const ComplexBall& cb = entry_ball(c, prec);
    d = entry_ball(p, prec) - to_ball(center, prec) * cb;
    e = ComplexBall::from_rational(step, 0, prec) * cb;
    m_all = add_up(d.abs_upper(), mul_up(2.0 * static_cast<double>(h + 1), e.abs_upper()));
    double err = add_up(d.radius(), mul_up(2.0 * static_cast<double>(h + 1), e.radius()));
    if (err <= std::ldexp(m_all, -60)) break;
  }
  int ex = 0;
  std::frexp(m_all, &ex);
  out.exp2 = 2L * ex;
  auto scaled = [&](const Real& v) {
    Real t(v);
    mpfr_mul_2si(t.get(), t.get(), -ex, MPFR_RNDN);
    return t.to_double();
  };
  const double dr = scaled(d.re()), di = scaled(d.im());
  const double er = scaled(e.re()), ei = scaled(e.im());
  const double sc = std::ldexp(1.0, -ex);
  const double d_err = std::sqrt(2.0) * (u * std::hypot(dr, di) + d.radius() * sc) * (1 + 1e-12);
  const double e_err = std::sqrt(2.0) * (u * std::hypot(er, ei) + e.radius() * sc) * (1 + 1e-12);
  const double ms = m_all * sc;
  const double eg = std::sqrt(2.0) * (d_err + 2.0 * static_cast<double>(h) * e_err + 8.0 * u * ms) * 1.01;
  const double vmin = 16.0 * eg / kOracleEta;

  const std::uint64_t base = matrix_hash(x, row, col);
  const std::uint64_t base_plain = matrix_hash(x, std::numeric_limits<std::size_t>::max(), 0);
  std::vector<std::uint64_t> hre(side), him(side);
  std::vector<mpq_class> re_vals(side), im_vals(side);
  for (long j = -h; j <= h; ++j) {
    re_vals[j + h] = center.re + j * step;
    im_vals[j + h] = center.im + j * step;
    hre[j + h] = hash_rational(re_vals[j + h]);
    him[j + h] = hash_rational(im_vals[j + h]);
  }
  for (long j = -h; j <= h; ++j) {
    for (long k = -h; k <= h; ++k) {
      const std::size_t idx = static_cast<std::size_t>((j + h) * static_cast<long>(side) + (k + h));
      const bool origin = re_vals[j + h] == 0 && im_vals[k + h] == 0;
      const std::uint64_t qh = origin ? base_plain : point_hash(base, hre[j + h], him[k + h]);
      const double jd = static_cast<double>(j), kd = static_cast<double>(k);
      const double vr = std::fma(kd, ei, std::fma(-jd, er, dr));
      const double vi = std::fma(-kd, er, std::fma(-jd, ei, di));
      const double nv = vr * vr + vi * vi;
      if (std::sqrt(nv) >= vmin) {
        out.values[idx] = nv * factor(qh);
        continue;
      }
      ++out.slow_points;
      EntryShift s{row, col, GaussRat(re_vals[j + h], im_vals[k + h])};
      Real t = origin ? truth(x, nullptr) : truth(x, &s);
      if (t.is_zero()) continue;
      mpfr_mul_d(t.get(), t.get(), factor(qh), MPFR_RNDN);
      mpfr_mul_2si(t.get(), t.get(), -out.exp2, MPFR_RNDN);
      double y = t.to_double();
      require(y > 0.0 && std::isfinite(y), ErrorCode::InvariantViolation,
              "oracle grid: response outside double range");
      out.values[idx] = y;
    }
  }
  return out;
}

}  // namespace qperm
