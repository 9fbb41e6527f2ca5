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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qperm/ball.hpp"
#include "qperm/cyclotomic.hpp"
#include "qperm/matrix.hpp"
#include "qperm/zperm.hpp"

namespace qperm {

enum class Adversary { exact, random_uniform_logfactor, worst_case_alternating };

std::string adversary_name(Adversary a);
Adversary parse_adversary(const std::string& s);

struct OracleConfig {
  mpq_class g = 1;
  Adversary adversary = Adversary::exact;
  std::uint64_t seed = 0;
  // Stateless in (query, seed) when true; otherwise every call draws fresh.
  bool consistent = true;
};

// Relative slack of simulated responses; see NormSqOracle::envelope().
inline constexpr double kOracleEta = 0x1p-30;

// A single shifted entry of X^{[t]}: X_{row,col} - t.
struct EntryShift {
  std::size_t row = 0;
  std::size_t col = 0;
  GaussRat t;
};

// Grid answers: value(j, k) = values[(j + h) * (2h + 1) + (k + h)] * 2^exp2.
struct GridResponse {
  long half_width = 0;
  long exp2 = 0;
  std::vector<double> values;
  std::uint64_t slow_points = 0;
};

// Simulated oracle for |Per_z(X')|^2 with multiplicative factor g, where X'
// is binary except for at most one shifted entry. Responses are zero exactly
// when the true value is zero. Not thread-safe: clone per worker.
class NormSqOracle {
 public:
  NormSqOracle(RootOfUnity z, OracleConfig cfg, KernelCaps caps = {});

  Real query(const MatrixZ& x);
  Real query(const MatrixZ& x, const EntryShift& shift);
  // Throws ShiftNotSupported for more than one shift.
  Real query(const MatrixZ& x, const std::vector<EntryShift>& shifts);
  // Values at t = center + (j + i k) step, |j|, |k| <= half_width.
  GridResponse query_grid(const MatrixZ& x, std::size_t row, std::size_t col,
                          const GaussRat& center, const mpq_class& step, long half_width);

  // Every response y obeys y / |Per|^2 in [1/envelope, envelope]; equals
  // max(g, 1 + eta) and reduces to g for g >= 1 + eta.
  double envelope() const;
  std::uint64_t query_count() const { return queries_; }
  const OracleConfig& config() const { return cfg_; }
  const RootOfUnity& root() const { return root_; }
  NormSqOracle clone(std::uint64_t seed) const;

  // Exact Per_z(X) and the coefficient of X_{row,col} (kernel ground truth).
  const CycInt& exact_per(const MatrixZ& x);
  const CycInt& exact_cofactor(const MatrixZ& x, std::size_t row, std::size_t col);

 private:
  struct Entry {
    CycInt value;
    bool has_ball = false;
    ComplexBall ball;
  };

  Entry& per_entry(const MatrixZ& x);
  Entry& cofactor_entry(const MatrixZ& x, std::size_t row, std::size_t col);
  const ComplexBall& entry_ball(Entry& e, mpfr_prec_t prec);
  double factor(std::uint64_t query_hash);
  std::uint64_t matrix_hash(const MatrixZ& x, std::size_t row, std::size_t col) const;
  // |P - t C|^2 with relative error <= eta / 4; exact zero detection.
  Real truth(const MatrixZ& x, const EntryShift* shift);

  RootOfUnity root_;
  OracleConfig cfg_;
  KernelCaps caps_;
  std::uint64_t queries_ = 0;
  std::map<std::string, Entry> cache_;
};

// Chain X_0 = X, ..., X_{n-1}: X_{i+1} deletes column 0 and row rows[i] of X_i.
struct SubmatrixChain {
  std::vector<MatrixZ> matrices;
  std::vector<std::size_t> rows;
  std::vector<Real> oracle_values;  // O(X_i)
};

SubmatrixChain find_submatrix_chain(const MatrixZ& x, NormSqOracle& oracle);

struct RefineRound {
  std::size_t index = 0;
  double beta = 0.0;
  double step = 0.0;
  long arg_j = 0;
  long arg_k = 0;
  double value = 0.0;
  std::uint64_t slow_points = 0;
};

struct RefineOptions {
  std::uint64_t max_rounds = 0;  // 0: derive from the a-priori round bound
  double rel_target = 0.0;       // stop once beta <= rel_target * |alpha|
  std::size_t n_for_bound = 0;   // matrix size used in the a-priori bound
  bool keep_transcript = true;
};

struct RefineResult {
  ComplexBall ratio;      // estimate of Per_z(X_i) / (z^k Per_z(X_{i+1}))
  GaussRat center;        // alpha_l, exact dyadic
  double beta = 0.0;      // certified |alpha - alpha_l| bound
  std::uint64_t rounds = 0;
  std::uint64_t queries = 0;
  bool exact = false;     // oracle hit zero: ratio is exact
  std::vector<RefineRound> transcript;
};

// a-priori bound on the number of rounds: 2^{l/2} > g^2 (n!)^2 n M^2 / eps,
// M = (2 n! + 1)^{m-2}.
std::uint64_t refine_round_bound(double g, std::size_t n, std::int64_t m, double eps);

RefineResult refine_ratio(const MatrixZ& xi, std::size_t row, const Real& o_next,
                          NormSqOracle& oracle, const RefineOptions& opt);

struct ReduceResult {
  ComplexBall estimate;
  bool zero = false;
  std::uint64_t queries = 0;
  SubmatrixChain chain;
  std::vector<RefineResult> ratios;
  double per_factor_delta = 0.0;
  // m n^2 g^4 log n + n g^4 log g + n g^4 log(1/eps)
  double query_budget_shape = 0.0;
};

ReduceResult reduce_error(const MatrixZ& x, NormSqOracle& oracle, double eps,
                          mpfr_prec_t prec = 256);

// Close algebraic integer problem over boxes prod [0, L_i].
struct CaipInstance {
  ComplexBall alpha;
  std::vector<mpz_class> bounds;
  mpz_class T;
  std::int64_t m = 3;
};

enum class CaipAnswer { close, far };

struct CaipStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t exact_checks = 0;
};

CaipAnswer caip_decide(const CaipInstance& inst, CaipStats* stats = nullptr);
// Boxes [lower_i, upper_i], via alpha - sum lower_i zeta^i.
CaipAnswer caip_decide_shifted(const ComplexBall& alpha, const std::vector<mpz_class>& lower,
                               const std::vector<mpz_class>& upper, const mpz_class& T,
                               std::int64_t m, CaipStats* stats = nullptr);

struct CaipSearchResult {
  std::optional<std::vector<mpz_class>> coeffs;
  std::uint64_t decide_queries = 0;
  CaipStats stats;
};

CaipSearchResult caip_search(const ComplexBall& alpha, const std::vector<mpz_class>& bounds,
                             const mpz_class& T, std::int64_t m);

enum class BoundMode { proof_chain, reduction_norm };

struct RecoverOptions {
  BoundMode bound = BoundMode::proof_chain;
};

struct RecoverResult {
  CycInt rep;
  ReduceResult reduce;
  mpz_class coeff_bound;
  mpq_class delta;  // additive target handed to reduce_error
  mpz_class T;
  CaipSearchResult caip;
};

RecoverResult recover_exact(const MatrixZ& x, NormSqOracle& oracle, const RecoverOptions& opt = {});

}  // namespace qperm
