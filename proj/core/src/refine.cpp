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

#include <algorithm>
#include <cmath>
#include <limits>

#include "qperm/cyclotomic.hpp"
#include "qperm/error.hpp"
#include "qperm/recovery.hpp"

namespace qperm {

namespace {

// ln(n!) via lgamma; the bounds below only need logarithms.
double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

long grid_size_for(const mpq_class& g) {
  mpq_class g2 = g * g;
  mpz_class c = g2.get_num() / g2.get_den();
  if (c * g2.get_den() != g2.get_num()) c += 1;
  return std::max<long>(1, c.get_si());
}

double halving_factor(double env, long L) {
  return round_up(round_up(env * env) * round_up(env * env) / (2.0 * static_cast<double>(L) * L));
}

double beta_bound(double env, const Real& o_cur, const Real& o_next) {
  Real q(o_cur.precision());
  mpfr_div(q.get(), o_cur.get(), o_next.get(), MPFR_RNDU);
  mpfr_sqrt(q.get(), q.get(), MPFR_RNDU);
  mpfr_mul_d(q.get(), q.get(), env, MPFR_RNDU);
  return q.to_double(MPFR_RNDU);
}

double abs_lower(const GaussRat& c) {
  Real re(c.re, 128, MPFR_RNDN), im(c.im, 128, MPFR_RNDN), r(128);
  mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDD);
  return r.to_double(MPFR_RNDD) * (1.0 - 0x1p-50);
}

}  // namespace

SubmatrixChain find_submatrix_chain(const MatrixZ& x, NormSqOracle& oracle) {
  SubmatrixChain chain;
  Real top = oracle.query(x);
  require(!top.is_zero(), ErrorCode::ZeroPermanent, "Per_z(X) = 0");
  chain.matrices.push_back(x);
  chain.oracle_values.push_back(top);
  while (chain.matrices.back().size() > 1) {
    const MatrixZ& cur = chain.matrices.back();
    bool found = false;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      MatrixZ w = cur.minor(k, 0);
      Real v = oracle.query(w);
      if (v.is_zero()) continue;
      chain.rows.push_back(k);
      chain.oracle_values.push_back(v);
      chain.matrices.push_back(std::move(w));
      found = true;
      break;
    }
    require(found, ErrorCode::InvariantViolation, "submatrix chain: every first-column minor vanished");
  }
  return chain;
}

std::uint64_t refine_round_bound(double g, std::size_t n, std::int64_t m, double eps) {
  require(g >= 1.0 && eps > 0.0 && n >= 1, ErrorCode::InvalidArgument, "refine_round_bound: bad arguments");
  const double env = std::max(g, 1.0 + kOracleEta);
  const long L = grid_size_for(mpq_class(g));
  const double gamma = halving_factor(env, L);
  // |Per_z| >= 1/M by the Liouville-type bound, M = (2 n! + 1)^(phi(m) - 1).
  const double log_nf = log_factorial(n);
  const double log_M =
      static_cast<double>(totient(m) - 1) * std::log(2.0 * std::exp(log_nf) + 1.0);
  // env^2 n! M gamma^(l/2) <= eps / (n! M).
  const double need = 2.0 * std::log(env) + 2.0 * log_nf + 2.0 * log_M + std::log(1.0 / eps);
  return static_cast<std::uint64_t>(std::ceil(2.0 * need / -std::log(gamma))) + 1;
}

RefineResult refine_ratio(const MatrixZ& xi, std::size_t row, const Real& o_next,
                          NormSqOracle& oracle, const RefineOptions& opt) {
  require(!o_next.is_zero(), ErrorCode::ZeroPermanent, "refine_ratio: O(Y) = 0");
  const std::uint64_t q0 = oracle.query_count();
  const double env = oracle.envelope();
  const long L = grid_size_for(oracle.config().g);
  const double gamma = halving_factor(env, L);
  const std::size_t n_bound = opt.n_for_bound ? opt.n_for_bound : xi.size();
  const std::uint64_t max_rounds =
      opt.max_rounds ? opt.max_rounds
                     : refine_round_bound(oracle.config().g.get_d(), n_bound, oracle.root().m,
                                          opt.rel_target > 0 ? opt.rel_target : 0x1p-64);

  RefineResult res;
  Real o_cur = oracle.query(xi);
  require(!o_cur.is_zero(), ErrorCode::ZeroPermanent, "refine_ratio: O(X) = 0");
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(o_cur.precision(), 128);

  for (;;) {
    res.beta = beta_bound(env, o_cur, o_next);
    if (opt.rel_target > 0) {
      const double lo = abs_lower(res.center) - res.beta;
      if (lo > 0 && res.beta <= opt.rel_target * lo * (1.0 - 0x1p-50)) break;
    }
    if (res.rounds >= max_rounds) break;
    // Grid magnitudes are carried as doubles; stop well before they underflow.
    if (res.beta < 0x1p-900) break;

    double s = std::nextafter(res.beta / static_cast<double>(L), 0.0);
    require(s > 0.0 && std::isfinite(s), ErrorCode::InvariantViolation, "refine_ratio: degenerate step");
    const mpq_class step(s);
    GridResponse gr = oracle.query_grid(xi, row, 0, res.center, step, L + 1);
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(gr.values.begin(), gr.values.end()) - gr.values.begin());
    const long side = 2 * gr.half_width + 1;
    const long j = static_cast<long>(best) / side - gr.half_width;
    const long k = static_cast<long>(best) % side - gr.half_width;
    res.center = GaussRat(res.center.re + j * step, res.center.im + k * step);
    ++res.rounds;

    RefineRound rr;
    rr.index = res.rounds;
    rr.beta = res.beta;
    rr.step = s;
    rr.arg_j = j;
    rr.arg_k = k;
    rr.slow_points = gr.slow_points;
    if (gr.values[best] == 0.0) {
      rr.value = 0.0;
      if (opt.keep_transcript) res.transcript.push_back(rr);
      res.exact = true;
      res.beta = 0.0;
      break;
    }
    Real o_new(gr.values[best], prec);
    mpfr_mul_2si(o_new.get(), o_new.get(), gr.exp2, MPFR_RNDN);
    rr.value = o_new.to_double();
    if (opt.keep_transcript) res.transcript.push_back(rr);

    Real limit(o_cur);
    mpfr_mul_d(limit.get(), limit.get(), gamma, MPFR_RNDU);
    require(mpfr_cmp(o_new.get(), limit.get()) <= 0, ErrorCode::InvariantViolation,
            "refine_ratio: no grid point achieved the halving step");
    o_cur = o_new;
  }
  res.ratio = ComplexBall::from_rational(res.center.re, res.center.im, prec);
  res.ratio.add_error(res.beta);
  res.queries = oracle.query_count() - q0;
  return res;
}

ReduceResult reduce_error(const MatrixZ& x, NormSqOracle& oracle, double eps, mpfr_prec_t prec) {
  require(x.domain() == Domain::binary, ErrorCode::InvalidArgument, "reduce_error needs a binary matrix");
  require(eps > 0.0 && eps < 1.0, ErrorCode::InvalidArgument, "reduce_error: eps must lie in (0, 1)");
  const std::uint64_t q0 = oracle.query_count();
  const std::size_t n = x.size();
  ReduceResult res;
  const double g = oracle.config().g.get_d();
  const double g4 = g * g * g * g;
  const double nd = static_cast<double>(n);
  res.query_budget_shape = static_cast<double>(oracle.root().m) * nd * nd * g4 * std::log(std::max(nd, 2.0)) +
                           nd * g4 * std::log(std::max(g, 2.0)) + nd * g4 * std::log(1.0 / eps);

  if (oracle.query(x).is_zero()) {
    res.zero = true;
    res.estimate = ComplexBall(prec);
    res.queries = oracle.query_count() - q0;
    return res;
  }
  res.chain = find_submatrix_chain(x, oracle);
  const std::size_t factors = n > 1 ? n - 1 : 1;
  res.per_factor_delta = std::min(eps / (2.0 * static_cast<double>(factors)), 1.0 / (2.0 * nd));

  // Base case: the 1x1 matrix at the end of the chain.
  const MatrixZ& base = res.chain.matrices.back();
  ComplexBall est = ComplexBall::from_integer(base.integers()(0, 0), prec);
  for (std::size_t i = 0; i + 1 < res.chain.matrices.size(); ++i) {
    RefineOptions opt;
    opt.rel_target = res.per_factor_delta;
    opt.n_for_bound = n;
    RefineResult r = refine_ratio(res.chain.matrices[i], res.chain.rows[i], res.chain.oracle_values[i + 1],
                                  oracle, opt);
    // Per_z(X_i) = ratio * z^row * Per_z(X_{i+1}), z = zeta_m^k.
    const RootOfUnity& z = oracle.root();
    const long e = static_cast<long>((static_cast<std::int64_t>(res.chain.rows[i]) * z.k) % z.m);
    est = est * r.ratio.with_precision(prec) * root_of_unity(e, static_cast<long>(z.m), prec);
    res.ratios.push_back(std::move(r));
  }
  res.estimate = est;
  res.queries = oracle.query_count() - q0;
  return res;
}

}  // namespace qperm
