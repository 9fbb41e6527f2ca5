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

#include "qperm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "qperm/error.hpp"

namespace qperm {

namespace {

constexpr std::size_t kMonteCarloCap = 12;

double pairwise_sum(const double* v, std::size_t len) {
  if (len <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += v[i];
    return s;
  }
  std::size_t h = len / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, len - h);
}

struct Stats {
  double mean = 0.0;
  double std_error = 0.0;
};

Stats mean_and_error(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  const double n = static_cast<double>(v.size());
  s.mean = pairwise_sum(v.data(), v.size()) / n;
  if (v.size() < 2) return s;
  std::vector<double> dev(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - s.mean) * (v[i] - s.mean);
  double var = pairwise_sum(dev.data(), dev.size()) / (n - 1);
  s.std_error = std::sqrt(var / n);
  return s;
}

std::string root_string(const RootOfUnity& z) { return std::to_string(z.m) + ":" + std::to_string(z.k); }

std::string dist_string(const DistSpec& d) {
  std::ostringstream os;
  os.precision(17);
  os << (d.family == DistFamily::complex_gaussian ? "gaussian" : "truncated_uniform") << ",mean=" << d.mean.real()
     << "+" << d.mean.imag() << "i,var=" << d.variance;
  if (d.truncation) os << ",trunc=" << *d.truncation;
  return os.str();
}

// Runs fn(block, rng, begin, end) over sample blocks on up to `jobs` threads.
template <class Fn>
void for_blocks(std::uint64_t samples, std::uint64_t seed, unsigned jobs, Fn fn) {
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  auto run = [&](unsigned w, unsigned stride) {
    for (std::uint64_t b = w; b < blocks; b += stride) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(b + 0x51ed2701u)));
      fn(rng, b * kSampleBlock, std::min(samples, (b + 1) * kSampleBlock));
    }
  };
  unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(blocks, 1))));
  if (workers == 1) {
    run(0, 1);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
  for (auto& t : pool) t.join();
}

Matrix<DoubleBall> draw(std::size_t n, const DistSpec& spec, std::mt19937_64& rng) {
  Matrix<DoubleBall> x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = DoubleBall(sample_entry(spec, rng));
  return x;
}

void check_mc_args(std::size_t n, const RootOfUnity& z, std::uint64_t samples) {
  validate_root(z);
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  require(n <= kMonteCarloCap, ErrorCode::CapExceeded, "n exceeds the Monte Carlo cap");
  require(samples >= 1, ErrorCode::InvalidArgument, "sample count must be >= 1");
}

// Permutations of {0..n-1} in lexicographic order with their inversion counts.
struct PermTable {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> inv;
};

PermTable all_perms(std::size_t n) {
  PermTable t;
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  do {
    t.perms.push_back(p);
    t.inv.push_back(inversion_number(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return t;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

DoubleBall root_double_ball(const RootOfUnity& z) {
  validate_root(z);
  const std::int64_t k = ((z.k % z.m) + z.m) % z.m;
  if (z.m == 1 || k == 0) return DoubleBall(std::complex<double>(1.0, 0.0));
  if (2 * k == z.m) return DoubleBall(std::complex<double>(-1.0, 0.0));
  if (4 * k == z.m) return DoubleBall(std::complex<double>(0.0, 1.0));
  if (4 * k == 3 * z.m) return DoubleBall(std::complex<double>(0.0, -1.0));
  const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(z.m);
  // Covers the rounding of pi, the division and libm's cos/sin.
  return DoubleBall(std::complex<double>(std::cos(t), std::sin(t)), 1e-14);
}

MomentReport moment_estimate(std::size_t n, const RootOfUnity& z, int k, std::uint64_t samples, const DistSpec& spec,
                             std::uint64_t seed, unsigned jobs) {
  check_mc_args(n, z, samples);
  require(k == 1 || k == 2, ErrorCode::InvalidArgument, "moment index k must be 1 or 2");
  const DoubleBall zb = root_double_ball(z);
  std::vector<double> vals(samples), errs(samples);
  for_blocks(samples, seed, jobs, [&](std::mt19937_64& rng, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t s = b; s < e; ++s) {
      DoubleBall p = per_z_value(draw(n, spec, rng), zb);
      double mid = std::norm(p.mid);
      double lo = p.abs_sq_lower(), hi = p.abs_sq_upper();
      if (k == 2) {
        mid *= mid;
        lo *= lo;
        hi *= hi;
      }
      vals[s] = mid;
      errs[s] = std::max(hi - mid, mid - lo);
    }
  });
  MomentReport r;
  r.n = n;
  r.z = z;
  r.order = 2 * k;
  r.samples = samples;
  Stats st = mean_and_error(vals);
  r.estimate = st.mean;
  r.std_error = st.std_error;
  r.max_eval_error = *std::max_element(errs.begin(), errs.end());
  const bool standard = spec.family == DistFamily::complex_gaussian && spec.mean == std::complex<double>(0, 0) &&
                        spec.variance == 1.0 && !spec.truncation;
  if (standard) {
    mpz_class f = factorial(static_cast<std::int64_t>(n));
    if (k == 1) r.exact_reference = mpq_class(f);
    // (n!)^2 (n+1) holds only at z = 1.
    if (k == 2 && (z.m == 1 || ((z.k % z.m) + z.m) % z.m == 0))
      r.exact_reference = mpq_class(f * f * static_cast<unsigned long>(n + 1));
  }
  r.seed = seed;
  r.config_hash = fnv1a64("moments;n=" + std::to_string(n) + ";root=" + root_string(z) + ";k=" + std::to_string(k) +
                          ";N=" + std::to_string(samples) + ";dist=" + dist_string(spec));
  return r;
}

mpq_class exact_second_moment(std::size_t n, const RootOfUnity& z) {
  validate_root(z);
  require(n >= 1 && n <= 6, ErrorCode::CapExceeded, "exact_second_moment needs 1 <= n <= 6");
  const PermTable t = all_perms(n);
  CycInt acc(z.m);
  // E[prod_i X_{i sigma(i)} conj(X_{i alpha(i)})] = [sigma = alpha] for
  // independent standard complex Gaussians.
  for (std::size_t a = 0; a < t.perms.size(); ++a)
    for (std::size_t b = 0; b < t.perms.size(); ++b) {
      if (t.perms[a] != t.perms[b]) continue;
      const auto e = static_cast<std::int64_t>(t.inv[a]) - static_cast<std::int64_t>(t.inv[b]);
      acc += CycInt::zeta_power(z.m, z.k * e);
    }
  const auto& c = acc.coeffs();
  for (std::size_t i = 1; i < c.size(); ++i)
    require(c[i] == 0, ErrorCode::InvariantViolation, "second moment is not a rational constant");
  return mpq_class(c.empty() ? mpz_class(0) : c[0]);
}

CycInt exact_fourth_moment(std::size_t n, const RootOfUnity& z) {
  validate_root(z);
  require(n >= 1 && n <= 5, ErrorCode::CapExceeded, "exact_fourth_moment needs 1 <= n <= 5");
  const PermTable t = all_perms(n);
  // Rank of each permutation for reverse lookup.
  auto rank = [&](const std::vector<std::size_t>& p) -> std::ptrdiff_t {
    auto it = std::lower_bound(t.perms.begin(), t.perms.end(), p);
    if (it == t.perms.end() || *it != p) return -1;
    return it - t.perms.begin();
  };
  // Only pairs (alpha1, alpha2) that match (sigma1, sigma2) row-wise as
  // multisets contribute; the weight is prod_{ij} a_ij! = 2^{#rows with
  // sigma1(i) = sigma2(i)}.
  std::vector<mpz_class> acc(static_cast<std::size_t>(z.m), 0);
  std::vector<std::size_t> a1(n), a2(n);
  for (std::size_t s1 = 0; s1 < t.perms.size(); ++s1)
    for (std::size_t s2 = 0; s2 < t.perms.size(); ++s2) {
      const auto& p = t.perms[s1];
      const auto& q = t.perms[s2];
      std::vector<std::size_t> diff;
      for (std::size_t i = 0; i < n; ++i)
        if (p[i] != q[i]) diff.push_back(i);
      const std::size_t fixed = n - diff.size();
      const long sig = static_cast<long>(t.inv[s1] + t.inv[s2]);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << diff.size()); ++mask) {
        a1 = p;
        a2 = q;
        for (std::size_t b = 0; b < diff.size(); ++b)
          if (mask >> b & 1) std::swap(a1[diff[b]], a2[diff[b]]);
        std::ptrdiff_t r1 = rank(a1), r2 = rank(a2);
        if (r1 < 0 || r2 < 0) continue;
        const long e = sig - static_cast<long>(t.inv[static_cast<std::size_t>(r1)] + t.inv[static_cast<std::size_t>(r2)]);
        const std::int64_t idx = ((z.k * e) % z.m + z.m) % z.m;
        acc[static_cast<std::size_t>(idx)] += mpz_class(1) << static_cast<mp_bitcnt_t>(fixed);
      }
    }
  CycInt out(z.m);
  for (std::int64_t i = 0; i < z.m; ++i)
    if (acc[static_cast<std::size_t>(i)] != 0) out += acc[static_cast<std::size_t>(i)] * CycInt::zeta_power(z.m, i);
  return out;
}

FourthMomentIdentity fourth_moment_identity(std::size_t n) {
  require(n >= 1 && n <= 9, ErrorCode::CapExceeded, "fourth_moment_identity needs 1 <= n <= 9");
  FourthMomentIdentity r;
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::vector<char> seen(n);
  r.lhs = 0;
  do {
    std::fill(seen.begin(), seen.end(), 0);
    unsigned long cycles = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = 1;
    }
    r.lhs += mpz_class(1) << cycles;
  } while (std::next_permutation(p.begin(), p.end()));
  r.rhs = factorial(static_cast<std::int64_t>(n + 1));
  r.equal = r.lhs == r.rhs;
  return r;
}

DominanceReport moment_dominance_check(std::size_t n, const RootOfUnity& z, std::uint64_t samples, std::uint64_t seed,
                                       unsigned jobs) {
  check_mc_args(n, z, samples);
  require(n <= 6, ErrorCode::CapExceeded, "moment_dominance_check needs n <= 6");
  const DoubleBall zb = root_double_ball(z), one(std::complex<double>(1.0, 0.0));
  const DistSpec spec;
  std::vector<double> fz(samples), f1(samples), fd(samples), sz(samples), s1(samples), sd(samples);
  for_blocks(samples, seed, jobs, [&](std::mt19937_64& rng, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t s = b; s < e; ++s) {
      Matrix<DoubleBall> x = draw(n, spec, rng);
      double a = std::norm(per_z_value(x, zb).mid);
      double c = std::norm(per_z_value(x, one).mid);
      sz[s] = a;
      s1[s] = c;
      sd[s] = a - c;
      fz[s] = a * a;
      f1[s] = c * c;
      fd[s] = a * a - c * c;
    }
  });
  DominanceReport r;
  r.n = n;
  r.z = z;
  r.samples = samples;
  r.fourth_z = mean_and_error(fz).mean;
  r.fourth_one = mean_and_error(f1).mean;
  Stats d = mean_and_error(fd);
  r.mean_difference = d.mean;
  r.difference_std_error = d.std_error;
  r.second_z = mean_and_error(sz).mean;
  r.second_one = mean_and_error(s1).mean;
  r.second_difference_std_error = mean_and_error(sd).std_error;
  r.seed = seed;
  r.config_hash = fnv1a64("dominance;n=" + std::to_string(n) + ";root=" + root_string(z) +
                          ";N=" + std::to_string(samples));
  return r;
}

AntiConcentrationReport anticoncentration_tally(std::size_t n, const RootOfUnity& z, double alpha,
                                                std::uint64_t samples, std::uint64_t seed, unsigned jobs) {
  check_mc_args(n, z, samples);
  require(alpha > 0 && alpha < 1, ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  const DoubleBall zb = root_double_ball(z);
  const double threshold = alpha * factorial(static_cast<std::int64_t>(n)).get_d();
  const DistSpec spec;
  std::vector<unsigned char> hit(samples), unsure(samples);
  for_blocks(samples, seed, jobs, [&](std::mt19937_64& rng, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t s = b; s < e; ++s) {
      DoubleBall p = per_z_value(draw(n, spec, rng), zb);
      // A sample counts only when its whole ball clears the threshold.
      hit[s] = p.abs_sq_lower() > threshold;
      unsure[s] = !hit[s] && p.abs_sq_upper() > threshold;
    }
  });
  AntiConcentrationReport r;
  r.n = n;
  r.z = z;
  r.alpha = alpha;
  r.samples = samples;
  for (std::uint64_t s = 0; s < samples; ++s) {
    r.hits += hit[s];
    r.undecided += unsure[s];
  }
  const double N = static_cast<double>(samples);
  r.empirical_prob = static_cast<double>(r.hits) / N;
  r.std_error = std::sqrt(r.empirical_prob * (1 - r.empirical_prob) / N);
  r.chebyshev_bound = (1 - alpha) * (1 - alpha) / static_cast<double>(n + 1);
  r.seed = seed;
  std::ostringstream os;
  os.precision(17);
  os << "anticoncentration;n=" << n << ";root=" << root_string(z) << ";alpha=" << alpha << ";N=" << samples;
  r.config_hash = fnv1a64(os.str());
  return r;
}

}  // namespace qperm
