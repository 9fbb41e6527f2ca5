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

#include "qperm/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qperm/error.hpp"

namespace qperm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Bound on the rounding error of a value produced with the given ternary
// flag at precision p (round to nearest).
double rounding_error(const Real& v, int ternary) {
  if (ternary == 0) return 0.0;
  return round_up(std::ldexp(v.abs_upper(), 1 - static_cast<int>(v.precision())));
}

double hypot_upper(const Real& a, const Real& b) {
  Real h(64);
  mpfr_hypot(h.get(), a.get(), b.get(), MPFR_RNDU);
  return h.to_double(MPFR_RNDU);
}

double hypot_lower(const Real& a, const Real& b) {
  Real h(64);
  mpfr_hypot(h.get(), a.get(), b.get(), MPFR_RNDD);
  return h.to_double(MPFR_RNDD);
}

}  // namespace

double round_up(double x) { return x == 0.0 ? 0.0 : std::nextafter(x, kInf); }
double add_up(double a, double b) {
  if (a == 0.0) return b;
  if (b == 0.0) return a;
  return round_up(a + b);
}
double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return round_up(a * b);
}

ComplexBall::ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec) {}

ComplexBall::ComplexBall(Real re, Real im, double radius)
    : re_(std::move(re)), im_(std::move(im)), rad_(radius) {
  if (im_.precision() != re_.precision()) im_.set_precision(re_.precision());
}

ComplexBall ComplexBall::from_integer(const mpz_class& v, mpfr_prec_t prec) {
  ComplexBall b(prec);
  int t = mpfr_set_z(b.re_.get(), v.get_mpz_t(), MPFR_RNDN);
  b.rad_ = rounding_error(b.re_, t);
  return b;
}

ComplexBall ComplexBall::from_rational(const mpq_class& re, const mpq_class& im,
                                       mpfr_prec_t prec) {
  ComplexBall b(prec);
  int t1 = mpfr_set_q(b.re_.get(), re.get_mpq_t(), MPFR_RNDN);
  int t2 = mpfr_set_q(b.im_.get(), im.get_mpq_t(), MPFR_RNDN);
  b.rad_ = add_up(rounding_error(b.re_, t1), rounding_error(b.im_, t2));
  return b;
}

ComplexBall ComplexBall::from_double(double re, double im, mpfr_prec_t prec) {
  ComplexBall b(prec);
  int t1 = mpfr_set_d(b.re_.get(), re, MPFR_RNDN);
  int t2 = mpfr_set_d(b.im_.get(), im, MPFR_RNDN);
  b.rad_ = add_up(rounding_error(b.re_, t1), rounding_error(b.im_, t2));
  return b;
}

ComplexBall& ComplexBall::add_error(double r) {
  rad_ = add_up(rad_, r);
  return *this;
}

ComplexBall ComplexBall::with_precision(mpfr_prec_t prec) const {
  ComplexBall b(prec);
  int t1 = mpfr_set(b.re_.get(), re_.get(), MPFR_RNDN);
  int t2 = mpfr_set(b.im_.get(), im_.get(), MPFR_RNDN);
  b.rad_ = add_up(rad_, add_up(rounding_error(b.re_, t1), rounding_error(b.im_, t2)));
  return b;
}

std::complex<double> ComplexBall::approx() const {
  return {re_.to_double(), im_.to_double()};
}

double ComplexBall::abs_upper() const { return add_up(hypot_upper(re_, im_), rad_); }

double ComplexBall::abs_lower() const {
  double l = hypot_lower(re_, im_) - rad_;
  if (l <= 0.0) return 0.0;
  return std::nextafter(l, 0.0);
}

void ComplexBall::abs_sq_bounds(Real& lo, Real& hi) const {
  mpfr_prec_t p = precision();
  Real h(p), r(53);
  mpfr_set_d(r.get(), rad_, MPFR_RNDU);
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDU);
  hi = Real(p);
  mpfr_add(hi.get(), h.get(), r.get(), MPFR_RNDU);
  mpfr_sqr(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDD);
  lo = Real(p);
  mpfr_sub(lo.get(), h.get(), r.get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_sqr(lo.get(), lo.get(), MPFR_RNDD);
  }
}

bool ComplexBall::contains(const ComplexBall& other) const {
  mpfr_prec_t p = std::max(precision(), other.precision());
  Real dre(p), dim(p);
  int t1 = mpfr_sub(dre.get(), re_.get(), other.re_.get(), MPFR_RNDN);
  int t2 = mpfr_sub(dim.get(), im_.get(), other.im_.get(), MPFR_RNDN);
  double dist = add_up(hypot_upper(dre, dim),
                       add_up(rounding_error(dre, t1), rounding_error(dim, t2)));
  return add_up(dist, other.rad_) <= rad_;
}

bool ComplexBall::contains(const mpq_class& re, const mpq_class& im) const {
  return contains(from_rational(re, im, std::max<mpfr_prec_t>(precision(), 64)));
}

bool ComplexBall::overlaps(const ComplexBall& other) const {
  ComplexBall d = *this - other;
  return d.abs_lower() <= 0.0;
}

ComplexBall ComplexBall::operator-() const {
  ComplexBall b(*this);
  mpfr_neg(b.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
  return b;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall c(std::max(a.precision(), b.precision()));
  int t1 = mpfr_add(c.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  int t2 = mpfr_add(c.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  c.rad_ = add_up(add_up(a.rad_, b.rad_),
                  add_up(rounding_error(c.re_, t1), rounding_error(c.im_, t2)));
  return c;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall c(std::max(a.precision(), b.precision()));
  int t1 = mpfr_sub(c.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  int t2 = mpfr_sub(c.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  c.rad_ = add_up(add_up(a.rad_, b.rad_),
                  add_up(rounding_error(c.re_, t1), rounding_error(c.im_, t2)));
  return c;
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall c(std::max(a.precision(), b.precision()));
  int t1 = mpfr_fmms(c.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(),
                     MPFR_RNDN);
  int t2 = mpfr_fmma(c.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(),
                     MPFR_RNDN);
  double r = 0.0;
  if (a.rad_ != 0.0 || b.rad_ != 0.0) {
    double am = hypot_upper(a.re_, a.im_);
    double bm = hypot_upper(b.re_, b.im_);
    r = add_up(add_up(mul_up(am, b.rad_), mul_up(bm, a.rad_)), mul_up(a.rad_, b.rad_));
  }
  c.rad_ = add_up(r, add_up(rounding_error(c.re_, t1), rounding_error(c.im_, t2)));
  return c;
}

ComplexBall inverse(const ComplexBall& a) {
  double lower = hypot_lower(a.re(), a.im());
  if (!(lower > a.radius())) fail(ErrorCode::DivisionByZero, "ball inverse: ball contains 0");
  mpfr_prec_t p = a.precision();
  Real n(p), re(p), im(p);
  mpfr_fmma(n.get(), a.re().get(), a.re().get(), a.im().get(), a.im().get(), MPFR_RNDN);
  mpfr_div(re.get(), a.re().get(), n.get(), MPFR_RNDN);
  mpfr_div(im.get(), a.im().get(), n.get(), MPFR_RNDN);
  mpfr_neg(im.get(), im.get(), MPFR_RNDN);
  // Midpoint error <= 5 * 2^-p / |mid|; ball error <= r / (L (L - r)).
  double mid_err = round_up(std::ldexp(5.0, -static_cast<int>(p)) / lower);
  double gap = std::nextafter(lower - a.radius(), 0.0);
  double ball_err = a.radius() == 0.0 ? 0.0 : round_up(a.radius() / (lower * gap));
  ball_err = round_up(ball_err * (1.0 + 1e-15));
  return ComplexBall(std::move(re), std::move(im), add_up(mid_err, ball_err));
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  return a * inverse(b);
}

ComplexBall conj(const ComplexBall& a) {
  return ComplexBall(a.re(), [&] {
    Real im(a.im());
    mpfr_neg(im.get(), im.get(), MPFR_RNDN);
    return im;
  }(), a.radius());
}

ComplexBall scale(const ComplexBall& a, const mpq_class& s) {
  return a * ComplexBall::from_rational(s, 0, a.precision());
}

std::string ComplexBall::to_string(int digits) const {
  std::ostringstream os;
  os << "(" << re_.to_string(digits) << ", " << im_.to_string(digits) << ") +/- " << rad_;
  return os.str();
}

ComplexBall unit_root(const mpq_class& q, mpfr_prec_t prec) {
  // Reduce to [0, 1).
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  mpq_class r = q - mpq_class(fl);
  Real re(prec), im(prec);
  mpq_class four_r = 4 * r;
  if (four_r.get_den() == 1) {
    long quarter = four_r.get_num().get_si();
    static const int kRe[4] = {1, 0, -1, 0};
    static const int kIm[4] = {0, 1, 0, -1};
    mpfr_set_si(re.get(), kRe[quarter], MPFR_RNDN);
    mpfr_set_si(im.get(), kIm[quarter], MPFR_RNDN);
    return ComplexBall(std::move(re), std::move(im), 0.0);
  }
  mpfr_prec_t w = prec + 16;
  Real pi(w), theta(w);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpq_class two_r = 2 * r;
  mpfr_mul_q(theta.get(), pi.get(), two_r.get_mpq_t(), MPFR_RNDN);
  mpfr_sin_cos(im.get(), re.get(), theta.get(), MPFR_RNDN);
  // Rounding of each component <= 2^-prec; angle error <= 13 * 2^-w.
  double rad = std::ldexp(2.0, -static_cast<int>(prec));
  if (rad == 0.0) rad = std::numeric_limits<double>::denorm_min();
  return ComplexBall(std::move(re), std::move(im), rad);
}

ComplexBall root_of_unity(long k, long m, mpfr_prec_t prec) {
  mpq_class q{mpz_class(k), mpz_class(m)};
  q.canonicalize();
  return unit_root(q, prec);
}

}  // namespace qperm
