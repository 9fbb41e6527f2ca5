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

#include <cstdint>
#include <vector>

#include "qperm/ball.hpp"
#include "qperm/cyclotomic.hpp"
#include "qperm/matrix.hpp"
#include "qperm/zperm.hpp"

namespace qperm {

struct Residue {
  mpz_class value;  // in [0, p)
  mpz_class p;
};

// Per(X) mod p from any representation of Per_{zeta_m}(X), m = p^k, p odd.
Residue per_mod_p_from_rep(const CycInt& rep, std::int64_t p);
// Non-canonical representation: a polynomial s with s(zeta_m) = Per_zeta(X).
Residue per_mod_p_from_rep(const IntPoly& rep, std::int64_t m, std::int64_t p);

// 2 (2 A0 - A1 - A2) mod 3.
Residue cube_root_real_part(const mpz_class& a0, const mpz_class& a1, const mpz_class& a2);

struct HighDegResult {
  std::vector<mpz_class> coeffs;  // A_0 .. A_d
  mpz_class per;
};

// Requires phi(m) >= C(n,2) + 1; the canonical coefficients are the A_l.
HighDegResult per_from_highdeg(const CycInt& rep, std::size_t n);

// Equally spaced nodes z_i = e^{2 pi i r} zeta_{d+1}^i, i = 0..d.
struct InterpNodes {
  std::size_t d = 0;
  mpq_class r;
  std::vector<ComplexBall> nodes;
  // Exact description: z_i = zeta_L^{exponents[i]}.
  std::int64_t L = 1;
  std::vector<std::int64_t> exponents;
};

// Default r = 1 / (2 (d + 1)).
mpq_class default_interp_shift(std::size_t d);
InterpNodes make_interp_nodes(std::size_t d, const mpq_class& r, mpfr_prec_t prec = kDefaultPrecision);
InterpNodes make_interp_nodes(std::size_t d, mpfr_prec_t prec = kDefaultPrecision);

// Solves V c = y by ball elimination with partial pivoting.
std::vector<ComplexBall> vandermonde_solve(const std::vector<ComplexBall>& nodes,
                                           const std::vector<ComplexBall>& values);
// Equally spaced nodes: c = V^H y / (d + 1).
std::vector<ComplexBall> vandermonde_solve(const InterpNodes& nodes,
                                           const std::vector<ComplexBall>& values);

struct InterpEstimate {
  ComplexBall estimate;
  double certified_error = 0.0;  // absolute, already included in the radius
  bool relative = false;         // bound was derived as eps * |Per|
  bool zero_fallback = false;    // multiplicative mode near Per = 0: absolute ball only
};

// Evals within additive eps of Per_{z_i}(X): estimate of Per_{z*}(X) with
// radius (arithmetic) + sqrt(d+1) eps.
InterpEstimate interpolate_per_additive(const InterpNodes& nodes, const std::vector<ComplexBall>& evals,
                                        double eps, const ComplexBall& z_star);
// Evals within eps |Per_{z_i}(X)|; X has nonnegative entries. Estimate of Per(X).
InterpEstimate interpolate_per_multiplicative(const InterpNodes& nodes,
                                              const std::vector<ComplexBall>& evals, double eps,
                                              const MatrixZ& x);

// Exact interpolation: values are Per at z_i in Q(zeta_M), M a multiple of
// nodes.L; returns the coefficients c_0..c_d (in the same field).
std::vector<CycRat> interpolate_exact(const InterpNodes& nodes, const std::vector<CycRat>& values);
// Exact evaluations of the matrix at the nodes.
std::vector<CycRat> exact_node_values(const MatrixZ& x, const InterpNodes& nodes,
                                      const KernelCaps& caps = {});

// Per_{z*}(X) approximation from an approximation of Per_z(conj X).
ComplexBall conjugate_transfer(const ComplexBall& approx);

}  // namespace qperm
