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
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qperm/cyclotomic.hpp"
#include "qperm/matrix.hpp"
#include "qperm/zperm.hpp"

namespace qperm {

enum class DistFamily { complex_gaussian, truncated_uniform };

std::string dist_family_name(DistFamily f);
DistFamily parse_dist_family(const std::string& s);

// Entries are mean + sqrt(variance) * (X + iY) / sqrt(2) with X, Y i.i.d. from
// the unit-variance real base: N(0, 1), or U[-sqrt 3, sqrt 3] for
// truncated_uniform. `truncation` rejects draws with |entry - mean| above it.
struct DistSpec {
  DistFamily family = DistFamily::complex_gaussian;
  std::complex<double> mean{0.0, 0.0};
  double variance = 1.0;
  std::optional<double> truncation;
  int discretization_bits = 30;
};

// One draw from the unit-variance real base of `family`.
double sample_base(DistFamily family, std::mt19937_64& rng);
std::complex<double> sample_entry(const DistSpec& spec, std::mt19937_64& rng);
// Exact gaussian_rational matrix on the 2^-bits grid.
MatrixZ sample_matrix(const DistSpec& spec, std::size_t n, std::mt19937_64& rng);
mpq_class snap_dyadic(double x, int bits);

enum class CorruptionMode { random_field_element, adversarial_offset };

std::string corruption_mode_name(CorruptionMode m);
CorruptionMode parse_corruption_mode(const std::string& s);

// Answers Per_z exactly with probability 1 - corruption_prob, otherwise a
// wrong field element. Values live in Q(zeta_M), M = lcm(4, m).
class NoisyValueOracle {
 public:
  NoisyValueOracle(RootOfUnity z, mpq_class corruption_prob, CorruptionMode mode, std::uint64_t seed,
                   KernelCaps caps = {});

  CycRat query(const MatrixZ& x);
  CycRat exact(const MatrixZ& x) const;

  std::int64_t field_modulus() const { return field_m_; }
  const RootOfUnity& root() const { return root_; }
  std::uint64_t query_count() const { return queries_; }
  std::uint64_t corrupted_count() const { return corrupted_; }

 private:
  RootOfUnity root_;
  mpq_class prob_;
  CorruptionMode mode_;
  std::mt19937_64 rng_;
  KernelCaps caps_;
  std::int64_t field_m_;
  std::uint64_t queries_ = 0;
  std::uint64_t corrupted_ = 0;
};

// Coefficients c_0 .. c_deg over a common field.
struct FieldPoly {
  std::vector<CycRat> coeffs;
  CycRat eval(const CycRat& x) const;
};

// Unique degree <= d polynomial agreeing with more than (L + d) / 2 of the
// points, from the linear system E(x) y = N(x) with deg E = floor((L-d-1)/2).
FieldPoly berlekamp_welch(const std::vector<CycRat>& xs, const std::vector<CycRat>& ys, std::size_t d);

struct SelfReduceOptions {
  mpq_class delta{1, 10};
  mpq_class m1 = 1;  // autocorrelation constants
  mpq_class m2 = 1;
  DistSpec dist;
  // 0: ceil(1 / delta^2).
  std::uint64_t repetitions = 0;
  // Stop once no remaining vote can change the leader.
  bool early_stop = true;
  std::uint64_t seed = 0;
};

struct SelfReduceVote {
  std::optional<CycRat> value;  // empty: abstained (decoding failed)
  std::uint64_t corrupted = 0;
};

struct SelfReduceResult {
  std::optional<CycRat> value;
  std::uint64_t points = 0;  // L
  mpq_class eps;
  std::uint64_t repetitions_planned = 0;
  std::vector<SelfReduceVote> votes;
  std::uint64_t winner_votes = 0;
  std::uint64_t abstentions = 0;
};

SelfReduceResult self_reduce(const MatrixZ& m, NoisyValueOracle& oracle, const SelfReduceOptions& opt);

// Total-variation checks for the strong autocorrelation property.
struct AutocorrReport {
  double G = 0.0;        // TV of the real base against its (1 - eps) scaling
  double G_total = 0.0;  // subadditive bound over 2n real coordinates
  double H_total = 0.0;  // same for the shift by v
  double bound1 = 0.0;   // 2 n M1 eps
  double bound2 = 0.0;   // sqrt(2n) M2 |v|_2
  bool pass = false;
};

// TV(F(0,1), F(0,(1-eps)^2)) and TV(F(0,1), F(x,1)) for the real base.
double tv_scale(DistFamily family, double eps, double tol = 1e-12);
double tv_shift(DistFamily family, double x, double tol = 1e-12);

AutocorrReport autocorr_check(DistFamily family, double eps, const std::vector<std::complex<double>>& v,
                              double m1, double m2, double tol = 1e-12);

struct SlopeRow {
  double x = 0.0;
  double G = 0.0;
  double H = 0.0;
};

struct SlopeTable {
  std::vector<SlopeRow> rows;
  double max_G_slope = 0.0;  // max G(eps) / eps
  double max_H_slope = 0.0;  // max H(x) / x
};

SlopeTable autocorr_slopes(DistFamily family, const std::vector<double>& grid, double tol = 1e-12);

// Additive estimates from a multiplicative solver: inner eps = eps'/k and
// delta = delta'/2 with k = sqrt(2/delta').
using MultiplicativeSolver = std::function<std::complex<double>(const MatrixZ&, double eps, double delta)>;

struct AdditiveSolver {
  MultiplicativeSolver inner;
  double eps_prime = 0.0;
  double delta_prime = 0.0;
  double k = 0.0;
  double inner_eps = 0.0;
  double inner_delta = 0.0;

  std::complex<double> operator()(const MatrixZ& x) const { return inner(x, inner_eps, inner_delta); }
  // eps' sqrt(n!)
  double additive_bound(std::size_t n) const;
};

AdditiveSolver additive_from_multiplicative(MultiplicativeSolver inner, double eps_prime, double delta_prime);

}  // namespace qperm
