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

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace qperm {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

// RAII wrapper around mpfr_t. Copies keep the source precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrecision);
  Real(double v, mpfr_prec_t prec);
  Real(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  Real(const mpq_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  // Changes precision, rounding the current value.
  void set_precision(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
  // |value| as a double rounded towards +infinity.
  double abs_upper() const;
  // Exact conversion; value must be finite.
  mpq_class to_rational() const;
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  // Decimal string with the given number of significant digits.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t value_;
};

}  // namespace qperm
