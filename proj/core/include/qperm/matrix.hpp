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

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qperm/ball.hpp"

namespace qperm {

// Exact Gaussian rational re + i im.
struct GaussRat {
  mpq_class re;
  mpq_class im;

  GaussRat() = default;
  GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  GaussRat(long r) : re(r), im(0) {}                                               // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }
  mpq_class norm() const { return re * re + im * im; }

  GaussRat operator-() const { return {-re, -im}; }
  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRat& operator+=(const GaussRat& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

ComplexBall to_ball(const GaussRat& g, mpfr_prec_t prec);

// Dense row-major square matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, const T& fill = T()) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<T>& data() const { return data_; }

  // Deletes row r and column c.
  Matrix minor(std::size_t r, std::size_t c) const {
    Matrix out(n_ - 1);
    for (std::size_t i = 0, oi = 0; i < n_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, oj = 0; j < n_; ++j) {
        if (j == c) continue;
        out(oi, oj++) = (*this)(i, j);
      }
      ++oi;
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m(n, T(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

template <class T>
Matrix<T> ones_matrix(std::size_t n) {
  return Matrix<T>(n, T(1));
}

enum class Domain { binary, integer, gaussian_rational, complex_float };

std::string domain_name(Domain d);
Domain parse_domain(const std::string& s);

// Square matrix tagged with its entry domain.
class MatrixZ {
 public:
  MatrixZ() : MatrixZ(Domain::integer, Matrix<mpz_class>(0)) {}
  MatrixZ(Domain domain, Matrix<mpz_class> m);  // binary or integer
  explicit MatrixZ(Matrix<GaussRat> m);
  explicit MatrixZ(Matrix<std::complex<double>> m);

  static MatrixZ binary(const Matrix<mpz_class>& m) { return MatrixZ(Domain::binary, m); }
  static MatrixZ integer(const Matrix<mpz_class>& m) { return MatrixZ(Domain::integer, m); }

  Domain domain() const { return domain_; }
  std::size_t size() const;
  bool is_exact_integer() const { return domain_ == Domain::binary || domain_ == Domain::integer; }

  const Matrix<mpz_class>& integers() const;
  const Matrix<GaussRat>& gaussian() const;
  const Matrix<std::complex<double>>& complex_float() const;

  // Exact view over Q(i); valid for every domain except complex_float.
  Matrix<GaussRat> as_gaussian() const;
  Matrix<ComplexBall> as_balls(mpfr_prec_t prec) const;

  MatrixZ minor(std::size_t r, std::size_t c) const;
  MatrixZ transpose() const;
  // Entrywise complex conjugate.
  MatrixZ conj() const;
  bool has_nonnegative_real_entries() const;

 private:
  Domain domain_;
  std::variant<Matrix<mpz_class>, Matrix<GaussRat>, Matrix<std::complex<double>>> entries_;
};

}  // namespace qperm
