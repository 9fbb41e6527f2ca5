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

#include "qperm/cyclotomic.hpp"
#include "qperm/error.hpp"
#include "qperm/recovery.hpp"

namespace qperm {

RecoverResult recover_exact(const MatrixZ& x, NormSqOracle& oracle, const RecoverOptions& opt) {
  require(x.domain() == Domain::binary, ErrorCode::InvalidArgument, "recover_exact needs a binary matrix");
  require(oracle.root().k == 1, ErrorCode::InvalidArgument, "recover_exact works with z = zeta_m");
  const std::int64_t m = oracle.root().m;
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const std::size_t phi = static_cast<std::size_t>(totient(m));

  RecoverResult res;
  res.rep = CycInt(m);
  const CoeffBound cb = opt.bound == BoundMode::proof_chain ? rep_coeff_bound(m, n) : reduction_coeff_bound(m, n);
  res.coeff_bound = cb.value;

  // Additive target: a quarter of the separation, and no more than 2^{-n^2}.
  mpq_class delta = separation_bound(cb.value, m) / 4;
  mpq_class cap(mpz_class(1), mpz_class(1) << static_cast<mp_bitcnt_t>(n * n));
  if (cap < delta) delta = cap;
  res.delta = delta;
  mpz_class t = delta.get_den() / delta.get_num();
  res.T = t;

  const std::int64_t bits = static_cast<std::int64_t>(mpz_sizeinbase(t.get_mpz_t(), 2)) + cb.bits + 64;
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(256, bits);
  const mpq_class rel = delta / (2 * factorial(n));
  res.reduce = reduce_error(x, oracle, rel.get_d(), prec);
  if (res.reduce.zero) return res;

  const ComplexBall& est = res.reduce.estimate;
  Real rad(est.radius(), 64);
  Real dl(delta, 64, MPFR_RNDD);
  require(mpfr_cmp(rad.get(), dl.get()) <= 0, ErrorCode::InvariantViolation,
          "recover_exact: refined estimate is wider than the separation target");

  // Shift the box [-A, A]^phi to [0, 2A]^phi.
  ComplexBall alpha(Real(est.re()), Real(est.im()), 0.0);
  alpha = alpha.with_precision(prec);
  for (std::size_t i = 0; i < phi; ++i)
    alpha += ComplexBall::from_integer(cb.value, prec) * root_of_unity(static_cast<long>(i), static_cast<long>(m), prec);
  std::vector<mpz_class> bounds(phi, 2 * cb.value);
  res.caip = caip_search(alpha, bounds, t, m);
  require(res.caip.coeffs.has_value(), ErrorCode::DecodingFailure, "recover_exact: no algebraic integer near the estimate");
  std::vector<mpz_class> coeffs = *res.caip.coeffs;
  for (auto& c : coeffs) c -= cb.value;
  res.rep = CycInt(m, std::move(coeffs));
  return res;
}

}  // namespace qperm
