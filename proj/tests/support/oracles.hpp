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

// Reference implementations used only by tests. They share no code with the
// library kernels: everything here is naive enumeration or textbook algebra.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qperm/matrix.hpp"

namespace qperm_test {

using qperm::GaussRat;
using qperm::Matrix;

std::size_t naive_inversions(const std::vector<std::size_t>& p);

// A_l = sum over sigma with l inversions of prod X_{i sigma(i)}.
std::vector<mpz_class> naive_invpoly(const Matrix<mpz_class>& x);
std::vector<GaussRat> naive_invpoly(const Matrix<GaussRat>& x);
std::vector<std::complex<double>> naive_invpoly(const Matrix<std::complex<double>>& x);

mpz_class naive_per(const Matrix<mpz_class>& x);
// Gaussian elimination over Q.
mpq_class rational_det(const Matrix<mpz_class>& x);

std::int64_t brute_totient(std::int64_t m);
// Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}, by exact multiplication and
// division of integer polynomials (ascending coefficients).
std::vector<mpz_class> mobius_cyclotomic(std::int64_t m);
// Remainder of a modulo the monic polynomial b (ascending coefficients,
// padded to deg b entries).
std::vector<mpz_class> poly_rem(std::vector<mpz_class> a, const std::vector<mpz_class>& b);

// sum_j c_j e^{2 pi i j / m} in long double.
std::complex<long double> eval_at_root(const std::vector<mpz_class>& c, std::int64_t m);
std::complex<long double> eval_at_root(const std::vector<mpq_class>& c, std::int64_t m);

Matrix<mpz_class> random_binary(std::size_t n, std::mt19937_64& rng);
Matrix<mpz_class> random_integer(std::size_t n, long lo, long hi, std::mt19937_64& rng);
Matrix<GaussRat> random_gaussian_rational(std::size_t n, std::mt19937_64& rng);
Matrix<std::complex<double>> random_complex(std::size_t n, std::mt19937_64& rng);

}  // namespace qperm_test
