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

#include <complex>
#include <string>

#include "qperm/real.hpp"

namespace qperm {

// Upward-rounded double helpers used for radii.
double round_up(double x);
double add_up(double a, double b);
double mul_up(double a, double b);

// Complex midpoint with MPFR components and a double radius bounding the
// absolute l2 error. Radii are always rounded towards +infinity.
class ComplexBall {
 public:
  explicit ComplexBall(mpfr_prec_t prec = kDefaultPrecision);
  ComplexBall(Real re, Real im, double radius);

  static ComplexBall from_integer(const mpz_class& v, mpfr_prec_t prec);
  static ComplexBall from_rational(const mpq_class& re, const mpq_class& im,
                                   mpfr_prec_t prec);
  // Exact when prec >= 53.
  static ComplexBall from_double(double re, double im, mpfr_prec_t prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  double radius() const { return rad_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  ComplexBall& add_error(double r);
  ComplexBall with_precision(mpfr_prec_t prec) const;

  std::complex<double> approx() const;
  // Bounds on |z| over all z in the ball.
  double abs_upper() const;
  double abs_lower() const;
  // Rigorous bounds on |z|^2, as MPFR values at the ball precision.
  void abs_sq_bounds(Real& lo, Real& hi) const;

  bool contains_zero() const { return abs_lower() <= 0.0; }
  bool contains(const ComplexBall& other) const;
  bool contains(const mpq_class& re, const mpq_class& im) const;
  bool overlaps(const ComplexBall& other) const;

  ComplexBall operator-() const;
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
  ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
  ComplexBall& operator-=(const ComplexBall& b) { return *this = *this - b; }
  ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }

  std::string to_string(int digits = 17) const;

 private:
  Real re_;
  Real im_;
  double rad_ = 0.0;
};

ComplexBall conj(const ComplexBall& a);
// Throws DivisionByZero when the ball may contain 0.
ComplexBall inverse(const ComplexBall& a);
ComplexBall scale(const ComplexBall& a, const mpq_class& s);

// e^{2 pi i q}. Exact for q in (1/4)Z.
ComplexBall unit_root(const mpq_class& q, mpfr_prec_t prec);
// e^{2 pi i k / m}.
ComplexBall root_of_unity(long k, long m, mpfr_prec_t prec);

}  // namespace qperm
