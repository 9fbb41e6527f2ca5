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

#include "qperm/hardness.hpp"

#include <cmath>
#include <numeric>

#include "qperm/error.hpp"

namespace qperm {

namespace {

void check_prime_power(std::int64_t m, std::int64_t p) {
  auto pp = prime_power(m);
  require(pp.has_value() && pp->first == p, ErrorCode::NotPrimePower,
          "m = " + std::to_string(m) + " is not a power of p = " + std::to_string(p));
  require(p != 2, ErrorCode::TwoPowerExcluded,
          "p = 2 is excluded: the permanent modulo 2^k has an efficient algorithm, so no "
          "hardness claim is attached to zeta_{2^k}");
}

mpz_class mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

Residue per_mod_p_from_rep(const CycInt& rep, std::int64_t p) {
  check_prime_power(rep.modulus(), p);
  return Residue{coefficient_sum_mod(rep, p), p};
}

Residue per_mod_p_from_rep(const IntPoly& rep, std::int64_t m, std::int64_t p) {
  check_prime_power(m, p);
  // s(1) = sum of coefficients; Phi_{p^k}(1) = p keeps it well defined mod p.
  return Residue{mod(rep.eval(1), p), p};
}

Residue cube_root_real_part(const mpz_class& a0, const mpz_class& a1, const mpz_class& a2) {
  // 2 is its own inverse mod 3.
  return Residue{mod(2 * (2 * a0 - a1 - a2), 3), 3};
}

HighDegResult per_from_highdeg(const CycInt& rep, std::size_t n) {
  const std::size_t d = n * (n - 1) / 2;
  const std::size_t phi = rep.coeffs().size();
  require(phi >= d + 1, ErrorCode::DegreeTooLow,
          "phi(m) = " + std::to_string(phi) + " must exceed C(n,2) = " + std::to_string(d));
  HighDegResult out;
  out.coeffs.assign(rep.coeffs().begin(), rep.coeffs().begin() + static_cast<long>(d + 1));
  for (std::size_t i = d + 1; i < phi; ++i) {
    require(rep.coeffs()[i] == 0, ErrorCode::InvariantViolation,
            "representation has a coefficient above degree C(n,2)");
  }
  out.per = 0;
  for (const auto& a : out.coeffs) out.per += a;
  return out;
}

mpq_class default_interp_shift(std::size_t d) {
  return mpq_class(mpz_class(1), mpz_class(2 * (d + 1)));
}

InterpNodes make_interp_nodes(std::size_t d, const mpq_class& r, mpfr_prec_t prec) {
  mpq_class upper(mpz_class(1), mpz_class(d + 1));
  require(r > 0 && r < upper, ErrorCode::InvalidArgument, "interpolation shift r must lie in (0, 1/(d+1))");
  InterpNodes out;
  out.d = d;
  out.r = r;
  const std::int64_t q = r.get_den().get_si();
  const std::int64_t dp1 = static_cast<std::int64_t>(d + 1);
  out.L = std::lcm(q, dp1);
  for (std::size_t i = 0; i <= d; ++i) {
    mpq_class angle = r + mpq_class(mpz_class(i), mpz_class(d + 1));
    angle.canonicalize();
    out.nodes.push_back(unit_root(angle, prec));
    out.exponents.push_back(r.get_num().get_si() * (out.L / q) +
                            static_cast<std::int64_t>(i) * (out.L / dp1));
  }
  return out;
}

InterpNodes make_interp_nodes(std::size_t d, mpfr_prec_t prec) {
  return make_interp_nodes(d, default_interp_shift(d), prec);
}

std::vector<ComplexBall> vandermonde_solve(const std::vector<ComplexBall>& nodes,
                                           const std::vector<ComplexBall>& values) {
  const std::size_t n = nodes.size();
  require(values.size() == n && n > 0, ErrorCode::InvalidArgument,
          "vandermonde_solve: need as many values as nodes");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(!nodes[i].overlaps(nodes[j]), ErrorCode::SingularSystem,
              "vandermonde_solve: nodes not separated at ball resolution");
  mpfr_prec_t prec = nodes[0].precision();
  // Augmented system [V | y].
  std::vector<std::vector<ComplexBall>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexBall pw = ComplexBall::from_integer(1, prec);
    for (std::size_t j = 0; j < n; ++j) {
      a[i].push_back(pw);
      pw = pw * nodes[i];
    }
    a[i].push_back(values[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = a[col][col].abs_lower();
    for (std::size_t r = col + 1; r < n; ++r) {
      double v = a[r][col].abs_lower();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    require(best > 0.0, ErrorCode::SingularSystem, "vandermonde_solve: pivot contains zero");
    std::swap(a[col], a[piv]);
    ComplexBall inv = inverse(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      ComplexBall f = a[r][col] * inv;
      for (std::size_t c = col; c <= n; ++c) a[r][c] = a[r][c] - f * a[col][c];
    }
  }
  std::vector<ComplexBall> x(n, ComplexBall(prec));
  for (std::size_t i = n; i-- > 0;) {
    ComplexBall acc = a[i][n];
    for (std::size_t j = i + 1; j < n; ++j) acc = acc - a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

std::vector<ComplexBall> vandermonde_solve(const InterpNodes& nodes,
                                           const std::vector<ComplexBall>& values) {
  const std::size_t n = nodes.d + 1;
  require(values.size() == n, ErrorCode::InvalidArgument,
          "vandermonde_solve: need d + 1 values");
  mpfr_prec_t prec = nodes.nodes[0].precision();
  for (const auto& v : values) prec = std::max(prec, v.precision());
  const mpq_class inv_n(mpz_class(1), mpz_class(n));
  std::vector<ComplexBall> c;
  c.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexBall acc(prec);
    for (std::size_t i = 0; i < n; ++i) {
      // conj(z_i)^j = e^{-2 pi i j (r + i/(d+1))}
      mpq_class angle = -mpq_class(mpz_class(j)) * (nodes.r + mpq_class(mpz_class(i), mpz_class(n)));
      angle.canonicalize();
      acc += unit_root(angle, prec) * values[i];
    }
    c.push_back(scale(acc, inv_n));
  }
  return c;
}

InterpEstimate interpolate_per_additive(const InterpNodes& nodes, const std::vector<ComplexBall>& evals,
                                        double eps, const ComplexBall& z_star) {
  require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be nonnegative");
  InterpEstimate out;
  out.certified_error = mul_up(std::sqrt(static_cast<double>(nodes.d + 1)) * (1 + 1e-15), eps);
  if (nodes.d == 0) {
    out.estimate = evals.at(0);
  } else {
    std::vector<ComplexBall> c = vandermonde_solve(nodes, evals);
    ComplexBall acc(c[0].precision());
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * z_star + c[j];
    out.estimate = acc;
  }
  out.estimate.add_error(out.certified_error);
  return out;
}

InterpEstimate interpolate_per_multiplicative(const InterpNodes& nodes,
                                              const std::vector<ComplexBall>& evals, double eps,
                                              const MatrixZ& x) {
  require(x.has_nonnegative_real_entries(), ErrorCode::NegativeEntries,
          "multiplicative interpolation needs a matrix with nonnegative entries");
  require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be nonnegative");
  InterpEstimate out;
  out.relative = true;
  ComplexBall f1;
  if (nodes.d == 0) {
    f1 = evals.at(0);
  } else {
    std::vector<ComplexBall> c = vandermonde_solve(nodes, evals);
    f1 = ComplexBall(c[0].precision());
    for (const auto& cj : c) f1 += cj;
  }
  // |f~(1) - f(1)| <= sqrt(d+1) eps f(1) and f(1) <= |f~(1)| / (1 - sqrt(d+1) eps).
  const double k = std::sqrt(static_cast<double>(nodes.d + 1)) * (1 + 1e-15) * eps;
  if (k >= 1.0) {
    out.zero_fallback = true;
    out.certified_error = std::numeric_limits<double>::infinity();
  } else {
    out.certified_error = round_up(mul_up(k, f1.abs_upper()) / (1.0 - k));
  }
  out.zero_fallback = out.zero_fallback || f1.contains_zero();
  out.estimate = f1;
  out.estimate.add_error(out.certified_error);
  return out;
}

std::vector<CycRat> interpolate_exact(const InterpNodes& nodes, const std::vector<CycRat>& values) {
  const std::size_t n = nodes.d + 1;
  require(values.size() == n, ErrorCode::InvalidArgument, "interpolate_exact: need d + 1 values");
  const std::int64_t M = values[0].modulus();
  require(M % nodes.L == 0, ErrorCode::MismatchedModulus,
          "interpolate_exact: value field must contain zeta_L");
  const std::int64_t step = M / nodes.L;
  std::vector<CycRat> c;
  const CycRat inv_n = CycRat::constant(M, mpq_class(mpz_class(1), mpz_class(n)));
  for (std::size_t j = 0; j < n; ++j) {
    CycRat acc(M);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t e = -nodes.exponents[i] * static_cast<std::int64_t>(j) * step;
      acc += CycRat(CycInt::zeta_power(M, e)) * values[i];
    }
    c.push_back(acc * inv_n);
  }
  return c;
}

std::vector<CycRat> exact_node_values(const MatrixZ& x, const InterpNodes& nodes, const KernelCaps& caps) {
  std::vector<CycRat> out;
  if (x.is_exact_integer()) {
    InvPoly<mpz_class> p = invpoly_integer(x, caps);
    for (std::int64_t e : nodes.exponents) out.emplace_back(evaluate_at_power(p, nodes.L, e));
  } else {
    InvPoly<GaussRat> p = invpoly_gaussian(x, caps);
    for (std::int64_t e : nodes.exponents) out.push_back(evaluate_at_power(p, nodes.L, e));
  }
  return out;
}

ComplexBall conjugate_transfer(const ComplexBall& approx) { return conj(approx); }

}  // namespace qperm
