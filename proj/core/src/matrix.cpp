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

#include "qperm/matrix.hpp"

#include "qperm/error.hpp"

namespace qperm {

ComplexBall to_ball(const GaussRat& g, mpfr_prec_t prec) {
  return ComplexBall::from_rational(g.re, g.im, prec);
}

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::binary: return "binary";
    case Domain::integer: return "integer";
    case Domain::gaussian_rational: return "gaussian_rational";
    case Domain::complex_float: return "complex_float";
  }
  return "unknown";
}

Domain parse_domain(const std::string& s) {
  if (s == "binary") return Domain::binary;
  if (s == "integer") return Domain::integer;
  if (s == "gaussian_rational") return Domain::gaussian_rational;
  if (s == "complex_float") return Domain::complex_float;
  fail(ErrorCode::ParseError, "unknown matrix domain '" + s + "'");
}

MatrixZ::MatrixZ(Domain domain, Matrix<mpz_class> m) : domain_(domain), entries_(std::move(m)) {
  require(domain == Domain::binary || domain == Domain::integer, ErrorCode::InvalidArgument,
          "integer storage requires binary or integer domain");
  if (domain == Domain::binary) {
    for (const auto& x : std::get<0>(entries_).data())
      require(x == 0 || x == 1, ErrorCode::InvalidArgument, "binary matrix entry not in {0,1}");
  }
}

MatrixZ::MatrixZ(Matrix<GaussRat> m) : domain_(Domain::gaussian_rational), entries_(std::move(m)) {}

MatrixZ::MatrixZ(Matrix<std::complex<double>> m)
    : domain_(Domain::complex_float), entries_(std::move(m)) {}

std::size_t MatrixZ::size() const {
  return std::visit([](const auto& m) { return m.size(); }, entries_);
}

const Matrix<mpz_class>& MatrixZ::integers() const {
  require(is_exact_integer(), ErrorCode::InvalidArgument, "matrix is not integral");
  return std::get<0>(entries_);
}

const Matrix<GaussRat>& MatrixZ::gaussian() const {
  require(domain_ == Domain::gaussian_rational, ErrorCode::InvalidArgument,
          "matrix is not gaussian_rational");
  return std::get<1>(entries_);
}

const Matrix<std::complex<double>>& MatrixZ::complex_float() const {
  require(domain_ == Domain::complex_float, ErrorCode::InvalidArgument,
          "matrix is not complex_float");
  return std::get<2>(entries_);
}

Matrix<GaussRat> MatrixZ::as_gaussian() const {
  const std::size_t n = size();
  Matrix<GaussRat> out(n);
  switch (domain_) {
    case Domain::binary:
    case Domain::integer:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = GaussRat(mpq_class(integers()(i, j)));
      return out;
    case Domain::gaussian_rational:
      return gaussian();
    case Domain::complex_float:
      // Doubles are dyadic rationals, so the exact view is available.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const auto& z = complex_float()(i, j);
          out(i, j) = GaussRat(mpq_class(z.real()), mpq_class(z.imag()));
        }
      return out;
  }
  return out;
}

Matrix<ComplexBall> MatrixZ::as_balls(mpfr_prec_t prec) const {
  const std::size_t n = size();
  Matrix<ComplexBall> out(n, ComplexBall(prec));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      switch (domain_) {
        case Domain::binary:
        case Domain::integer: out(i, j) = ComplexBall::from_integer(integers()(i, j), prec); break;
        case Domain::gaussian_rational: out(i, j) = to_ball(gaussian()(i, j), prec); break;
        case Domain::complex_float: {
          const auto& z = complex_float()(i, j);
          out(i, j) = ComplexBall::from_double(z.real(), z.imag(), prec);
          break;
        }
      }
    }
  return out;
}

MatrixZ MatrixZ::minor(std::size_t r, std::size_t c) const {
  switch (domain_) {
    case Domain::binary:
    case Domain::integer: return MatrixZ(domain_, integers().minor(r, c));
    case Domain::gaussian_rational: return MatrixZ(gaussian().minor(r, c));
    case Domain::complex_float: return MatrixZ(complex_float().minor(r, c));
  }
  return *this;
}

MatrixZ MatrixZ::transpose() const {
  switch (domain_) {
    case Domain::binary:
    case Domain::integer: return MatrixZ(domain_, integers().transpose());
    case Domain::gaussian_rational: return MatrixZ(gaussian().transpose());
    case Domain::complex_float: return MatrixZ(complex_float().transpose());
  }
  return *this;
}

MatrixZ MatrixZ::conj() const {
  const std::size_t n = size();
  if (domain_ == Domain::gaussian_rational) {
    Matrix<GaussRat> m = gaussian();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = m(i, j).conj();
    return MatrixZ(std::move(m));
  }
  if (domain_ == Domain::complex_float) {
    Matrix<std::complex<double>> m = complex_float();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = std::conj(m(i, j));
    return MatrixZ(std::move(m));
  }
  return *this;
}

bool MatrixZ::has_nonnegative_real_entries() const {
  switch (domain_) {
    case Domain::binary: return true;
    case Domain::integer:
      for (const auto& x : integers().data())
        if (x < 0) return false;
      return true;
    case Domain::gaussian_rational:
      for (const auto& x : gaussian().data())
        if (x.re < 0 || x.im != 0) return false;
      return true;
    case Domain::complex_float:
      for (const auto& x : complex_float().data())
        if (x.real() < 0 || x.imag() != 0) return false;
      return true;
  }
  return false;
}

}  // namespace qperm
