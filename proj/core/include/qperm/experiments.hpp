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
#include <optional>
#include <string>
#include <vector>

#include "qperm/cyclotomic.hpp"
#include "qperm/dball.hpp"
#include "qperm/selfreduce.hpp"
#include "qperm/zperm.hpp"

namespace qperm {

// z = zeta_m^k as a double ball; m = 1 gives z = 1 and m = 2 gives z = -1.
DoubleBall root_double_ball(const RootOfUnity& z);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(const std::string& s);

// Samples are drawn in fixed blocks, each from its own derived generator, so
// results do not depend on the worker count.
inline constexpr std::uint64_t kSampleBlock = 1024;

struct MomentReport {
  std::size_t n = 0;
  RootOfUnity z;
  int order = 2;  // 2k
  std::uint64_t samples = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double max_eval_error = 0.0;  // largest certified error of a sampled |Per_z|^{2k}
  std::optional<mpq_class> exact_reference;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

MomentReport moment_estimate(std::size_t n, const RootOfUnity& z, int k, std::uint64_t samples, const DistSpec& spec,
                             std::uint64_t seed, unsigned jobs = 1);

// sum over sigma, alpha of z^{l(sigma) - l(alpha)} E[prod X_{i sigma(i)} conj X_{i alpha(i)}]
// for i.i.d. standard complex Gaussians, summed exactly in Z[zeta_m].
mpq_class exact_second_moment(std::size_t n, const RootOfUnity& z);

// E|Per_z(X)|^4 for i.i.d. standard complex Gaussians by the 4-fold
// permutation sum, using E[x^a conj(x)^b] = [a = b] a!. The value is real but
// lies in Z[zeta_m], not necessarily in Z.
CycInt exact_fourth_moment(std::size_t n, const RootOfUnity& z);

struct FourthMomentIdentity {
  mpz_class lhs;  // sum over S_n of 2^{cycles}
  mpz_class rhs;  // (n + 1)!
  bool equal = false;
};

FourthMomentIdentity fourth_moment_identity(std::size_t n);

struct DominanceReport {
  std::size_t n = 0;
  RootOfUnity z;
  std::uint64_t samples = 0;
  double fourth_z = 0.0;     // E|Per_z|^4
  double fourth_one = 0.0;   // E|Per|^4
  double mean_difference = 0.0;  // E|Per_z|^4 - E|Per|^4, paired
  double difference_std_error = 0.0;
  double second_z = 0.0;
  double second_one = 0.0;
  double second_difference_std_error = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

DominanceReport moment_dominance_check(std::size_t n, const RootOfUnity& z, std::uint64_t samples, std::uint64_t seed,
                                       unsigned jobs = 1);

struct AntiConcentrationReport {
  std::size_t n = 0;
  RootOfUnity z;
  double alpha = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double empirical_prob = 0.0;
  double std_error = 0.0;     // binomial sqrt(p (1 - p) / N)
  double chebyshev_bound = 0.0;   // (1 - alpha)^2 / (n + 1)
  std::uint64_t undecided = 0;  // samples whose ball straddles the threshold
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

AntiConcentrationReport anticoncentration_tally(std::size_t n, const RootOfUnity& z, double alpha,
                                                std::uint64_t samples, std::uint64_t seed, unsigned jobs = 1);

}  // namespace qperm
