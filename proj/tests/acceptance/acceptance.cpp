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

// Acceptance run: one PASS/FAIL line per criterion. Arguments select a subset
// of criteria by number; the exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qperm/cyclotomic.hpp"
#include "qperm/error.hpp"
#include "qperm/experiments.hpp"
#include "qperm/hardness.hpp"
#include "qperm/recovery.hpp"
#include "qperm/selfreduce.hpp"
#include "qperm/zperm.hpp"

using namespace qperm;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> run;
};

std::uint64_t ryser_mod(const Matrix<mpz_class>& x, std::int64_t p) {
  mpz_class r = per_one_ryser(x) % p;
  if (r < 0) r += p;
  return r.get_ui();
}

ComplexBall one_ball(mpfr_prec_t prec) { return ComplexBall::from_integer(1, prec); }

// 1. Closed forms for n = 2 and n = 3.
void closed_forms(Outcome& o) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 20; ++t) {
    const auto a = qperm_test::random_integer(2, -9, 9, rng);
    const auto p2 = invpoly_integer(MatrixZ::integer(a)).coeffs;
    const std::vector<mpz_class> want2{a(0, 0) * a(1, 1), a(1, 0) * a(0, 1)};
    o.require(p2 == want2, "n = 2 display");

    const auto x = qperm_test::random_integer(3, -9, 9, rng);
    auto X = [&](int i, int j) { return x(i - 1, j - 1); };
    const std::vector<mpz_class> want3{
        X(1, 1) * X(2, 2) * X(3, 3),
        X(1, 1) * X(2, 3) * X(3, 2) + X(1, 2) * X(2, 1) * X(3, 3),
        X(1, 2) * X(2, 3) * X(3, 1) + X(1, 3) * X(2, 1) * X(3, 2),
        X(1, 3) * X(2, 2) * X(3, 1),
    };
    o.require(invpoly_integer(MatrixZ::integer(x)).coeffs == want3, "n = 3 display");
  }
  o.detail << "40 instantiations";
}

// 2. Subset DP against brute force in every domain.
void kernel_equivalence(Outcome& o) {
  std::mt19937_64 rng(102);
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int t = 0; t < 50; ++t) {
      const MatrixZ xs[] = {
          MatrixZ::binary(qperm_test::random_binary(n, rng)),
          MatrixZ::integer(qperm_test::random_integer(n, -20, 20, rng)),
          MatrixZ(qperm_test::random_gaussian_rational(n, rng)),
          MatrixZ(qperm_test::random_complex(n, rng)),
      };
      for (const MatrixZ& x : xs) {
        const AnyInvPoly a = invpoly_bruteforce(x), b = invpoly_subset_dp(x);
        if (x.domain() == Domain::complex_float) {
          const auto& ca = std::get<InvPoly<ComplexBall>>(a).coeffs;
          const auto& cb = std::get<InvPoly<ComplexBall>>(b).coeffs;
          bool ok = ca.size() == cb.size();
          for (std::size_t l = 0; ok && l < ca.size(); ++l) ok = ca[l].overlaps(cb[l]);
          o.require(ok, "complex_float balls overlap at n = " + std::to_string(n));
        } else if (x.domain() == Domain::gaussian_rational) {
          o.require(std::get<InvPoly<GaussRat>>(a) == std::get<InvPoly<GaussRat>>(b),
                    "gaussian_rational at n = " + std::to_string(n));
        } else {
          o.require(std::get<InvPoly<mpz_class>>(a) == std::get<InvPoly<mpz_class>>(b),
                    std::string(domain_name(x.domain())) + " at n = " + std::to_string(n));
        }
        ++checked;
      }
    }
  }
  o.detail << checked << " matrices (4 domains, n = 1..8)";
}

// 3. z = 1 is the permanent, z = -1 the determinant.
void specializations(Outcome& o) {
  std::mt19937_64 rng(103);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int t = 0; t < 50; ++t) {
      const auto x = qperm_test::random_integer(n, -10, 10, rng);
      const auto p = invpoly_integer(MatrixZ::integer(x));
      o.require(specialize(p, RootOfUnity{1, 1}).coeffs()[0] == per_one_ryser(x), "z = 1");
      const CycInt d = specialize(p, RootOfUnity{2, 1});
      o.require(mpq_class(d.coeffs()[0]) == qperm_test::rational_det(x), "z = -1");
    }
  }
  o.detail << "350 matrices, n = 1..7";
}

// 4. Coefficient sum mod p.
void mod_p(Outcome& o) {
  std::mt19937_64 rng(104);
  const std::pair<std::int64_t, std::int64_t> cases[] = {{3, 3}, {5, 5}, {7, 7}, {9, 3}, {27, 3}};
  for (auto [m, p] : cases) {
    const IntPoly phi = cyclotomic_poly(m);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng() % 7;
      const auto x = qperm_test::random_binary(n, rng);
      const CycInt rep = per_at_root(MatrixZ::binary(x), {m, 1});
      const Residue r = per_mod_p_from_rep(rep, p);
      const std::uint64_t want = ryser_mod(x, p);
      o.require(r.p == p && r.value == want, "residue at m = " + std::to_string(m));
      std::vector<mpz_class> h(1 + rng() % 6);
      for (auto& c : h) c = static_cast<long>(rng() % 41) - 20;
      const IntPoly shifted = IntPoly(rep.coeffs()) + phi * IntPoly(h);
      o.require(per_mod_p_from_rep(shifted, m, p).value == want, "invariance at m = " + std::to_string(m));
    }
  }
  o.detail << "500 matrices, m in {3, 5, 7, 9, 27}";
}

// 5. High-degree recovery of the whole inversion polynomial.
void high_degree(Outcome& o) {
  std::mt19937_64 rng(105);
  const std::pair<std::size_t, std::int64_t> cases[] = {{2, 5}, {3, 7}, {4, 15}};
  for (auto [n, m] : cases) {
    for (int t = 0; t < 30; ++t) {
      const MatrixZ x = MatrixZ::binary(qperm_test::random_binary(n, rng));
      const HighDegResult r = per_from_highdeg(per_at_root(x, {m, 1}), n);
      o.require(r.coeffs == invpoly_integer(x).coeffs, "A vector at m = " + std::to_string(m));
      o.require(r.per == per_one_ryser(x.integers()), "sum at m = " + std::to_string(m));
    }
  }
  o.detail << "90 matrices";
}

// 6. Approximate-to-exact recovery.
void recovery(Outcome& o) {
  std::mt19937_64 rng(106);
  std::size_t runs = 0;
  double worst = 0.0;  // largest observed error / 2^{-n^2}
  for (long g : {2L, 10L})
    for (Adversary adv : {Adversary::random_uniform_logfactor, Adversary::worst_case_alternating})
      for (std::int64_t m : {3, 5})
        for (std::size_t n = 1; n <= 4; ++n)
          for (int t = 0; t < 20; ++t) {
            // Per_z(X) = 0 is answered by the first oracle call; draw past it.
            MatrixZ x = MatrixZ::binary(qperm_test::random_binary(n, rng));
            while (per_at_root(x, {m, 1}).is_zero()) x = MatrixZ::binary(qperm_test::random_binary(n, rng));
            OracleConfig cfg;
            cfg.g = g;
            cfg.adversary = adv;
            cfg.seed = rng();
            NormSqOracle oracle({m, 1}, cfg);
            const CycInt truth = per_at_root(x, {m, 1});
            const std::string where = "g = " + std::to_string(g) + ", " + adversary_name(adv) +
                                      ", m = " + std::to_string(m) + ", n = " + std::to_string(n);
            try {
              const RecoverResult r = recover_exact(x, oracle, {});
              ++runs;
              o.require(r.rep == truth, "representation, " + where);
              o.require(!r.reduce.zero, "zero flag, " + where);
              const double cap = std::ldexp(1.0, -static_cast<int>(n * n));
              const ComplexBall exact = embed(truth, 256);
              const double err = std::abs(r.reduce.estimate.approx() - exact.approx());
              worst = std::max(worst, std::max(err, r.reduce.estimate.radius()) / cap);
              o.require(err <= cap && r.reduce.estimate.radius() <= cap, "pre-CAIP error, " + where);
            } catch (const Error& e) {
              o.require(false, where + ": " + e.what());
            }
          }
  o.detail << runs << " recoveries with Per_z != 0, max pre-CAIP error = " << worst
           << " * 2^-n^2";
}

// 7. CAIP search round trip.
void caip_round_trip(Outcome& o) {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  std::uint64_t worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::int64_t m = 3 + t % 3;
    const std::size_t phi = static_cast<std::size_t>(totient(m));
    const mpz_class A = 50;
    std::vector<mpz_class> c(phi);
    for (auto& v : c) v = static_cast<long>(rng() % 51);
    const mpq_class delta = separation_bound(A, m) / 4;
    const mpz_class T = delta.get_den() / delta.get_num();
    // Perturb by 0.9 / T in a random direction, rounded to a dyadic.
    const double th = ang(rng);
    const mpq_class scale(mpz_class(1), T);
    const mpq_class re = mpq_class(std::floor(0.9 * std::cos(th) * 0x1p40)) / mpq_class(mpz_class(1) << 40) * scale;
    const mpq_class im = mpq_class(std::floor(0.9 * std::sin(th) * 0x1p40)) / mpq_class(mpz_class(1) << 40) * scale;
    const mpfr_prec_t prec = 256;
    ComplexBall alpha = embed(CycInt(m, c), prec) + ComplexBall::from_rational(re, im, prec);
    const CaipSearchResult r = caip_search(alpha, std::vector<mpz_class>(phi, A), T, m);
    const std::uint64_t cap = phi * (static_cast<std::uint64_t>(std::ceil(std::log2(50.0))) + 2);
    worst = std::max(worst, r.decide_queries);
    o.require(r.coeffs && *r.coeffs == c, "recovered coefficients, m = " + std::to_string(m));
    o.require(r.decide_queries <= cap, "query count " + std::to_string(r.decide_queries) + " > " + std::to_string(cap));
  }
  o.detail << "100 searches, max " << worst << " decision queries (cap phi * 8)";
}

// 8. Exhaustive pairwise separation.
void separation(Outcome& o) {
  const std::pair<std::int64_t, long> cases[] = {{3, 5}, {4, 5}, {5, 3}};
  std::uint64_t pairs = 0;
  for (auto [m, A] : cases) {
    const std::size_t phi = static_cast<std::size_t>(totient(m));
    const mpq_class bound = separation_bound(A, m);
    const double bound_up = Real(bound, 64, MPFR_RNDU).to_double(MPFR_RNDU);
    std::vector<ComplexBall> pts;
    std::vector<mpz_class> c(phi, -A);
    for (;;) {
      pts.push_back(embed(CycInt(m, c), 128));
      std::size_t i = 0;
      while (i < phi && c[i] == A) c[i++] = -A;
      if (i == phi) break;
      ++c[i];
    }
    double dmin = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double lo = (pts[i] - pts[j]).abs_lower();
        dmin = std::min(dmin, lo);
        ++pairs;
      }
    o.require(dmin >= bound_up, "separation at m = " + std::to_string(m));
    o.detail << "(m=" << m << ", A=" << A << "): min " << dmin << " >= " << bound.get_d() << "; ";
  }
  o.detail << pairs << " pairs";
}

// 9. Berlekamp-Welch with maximal corruption over Q(zeta_12).
void berlekamp_welch_check(Outcome& o) {
  std::mt19937_64 rng(109);
  const std::int64_t m = 12;
  const std::size_t phi = static_cast<std::size_t>(totient(m));
  std::uniform_int_distribution<long> num(-30, 30), den(1, 7);
  auto elem = [&] {
    std::vector<mpq_class> c(phi);
    for (auto& v : c) {
      v = mpq_class(num(rng), den(rng));
      v.canonicalize();
    }
    return CycRat(m, c);
  };
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + t % 8, L = 4 * d, e = (L - d - 1) / 2;
    std::vector<CycRat> q;
    for (std::size_t i = 0; i <= d; ++i) q.push_back(elem());
    const FieldPoly poly{q};
    std::vector<CycRat> xs, ys;
    for (std::size_t i = 0; i < L; ++i) {
      xs.push_back(CycRat::constant(m, mpq_class(static_cast<long>(i) + 1)));
      ys.push_back(poly.eval(xs.back()));
    }
    std::vector<std::size_t> idx(L);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 0; i < e; ++i) {
      CycRat bad = elem();
      while (bad.is_zero()) bad = elem();
      ys[idx[i]] = ys[idx[i]] + bad;
    }
    try {
      const FieldPoly got = berlekamp_welch(xs, ys, d);
      std::vector<CycRat> gc = got.coeffs;
      while (gc.size() < q.size()) gc.push_back(CycRat(m));
      bool same = gc.size() == q.size();
      for (std::size_t i = 0; same && i < q.size(); ++i) same = gc[i] == q[i];
      ok += same;
    } catch (const Error&) {
    }
  }
  o.require(ok == 100, "exact recoveries " + std::to_string(ok) + "/100");
  o.detail << ok << "/100 exact";
}

// 10. Random self-reduction.
void self_reduction(Outcome& o) {
  std::mt19937_64 rng(110);
  const int trials = 50;
  int wins = 0;
  std::uint64_t votes = 0;
  for (int t = 0; t < trials; ++t) {
    const MatrixZ target = MatrixZ::binary(qperm_test::random_binary(4, rng));
    NoisyValueOracle oracle({3, 1}, mpq_class(1, 5), CorruptionMode::random_field_element, rng());
    SelfReduceOptions opt;
    opt.delta = mpq_class(1, 10);
    opt.seed = rng();
    try {
      const SelfReduceResult r = self_reduce(target, oracle, opt);
      votes += r.votes.size();
      wins += r.value && *r.value == oracle.exact(target);
    } catch (const Error&) {
    }
  }
  const double floor95 = 2.0 / 3.0 - 1.96 * std::sqrt((2.0 / 9.0) / trials);
  o.require(wins >= 30, "successes " + std::to_string(wins) + "/50 below 60%");
  o.detail << wins << "/" << trials << " correct (60% floor; binomial 95% band for 2/3 starts at " << floor95
           << "), " << votes << " votes";
}

// 11. Interpolation from shifted roots of unity.
void interpolation(Outcome& o) {
  std::mt19937_64 rng(111);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int t = 0; t < 10; ++t) {
      const MatrixZ x = MatrixZ::binary(qperm_test::random_binary(n, rng));
      const InterpNodes nodes = make_interp_nodes(n * (n - 1) / 2, 128);
      const auto coeffs = interpolate_exact(nodes, exact_node_values(x, nodes));
      CycRat sum(coeffs.at(0).modulus());
      for (const auto& c : coeffs) sum += c;
      o.require(sum == CycRat::constant(sum.modulus(), mpq_class(per_one_ryser(x.integers()))),
                "exact interpolation at n = " + std::to_string(n));
    }
  }
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (double eps : {1e-4, 1e-6}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + t % 5, d = n * (n - 1) / 2;
      const MatrixZ x = MatrixZ::binary(qperm_test::random_binary(n, rng));
      const InterpNodes nodes = make_interp_nodes(d, 192);
      std::vector<ComplexBall> vals;
      for (const auto& v : exact_node_values(x, nodes)) {
        const std::complex<double> e = std::polar(eps * std::sqrt(u(rng)), 2 * M_PI * u(rng));
        vals.push_back(embed(v, 192) + ComplexBall::from_double(e.real(), e.imag(), 192));
      }
      const InterpEstimate est = interpolate_per_additive(nodes, vals, eps, one_ball(192));
      const double per = per_one_ryser(x.integers()).get_d();
      const double err = std::abs(est.estimate.approx() - std::complex<double>(per, 0));
      const double cap = std::sqrt(static_cast<double>(d + 1)) * eps;
      worst = std::max(worst, err / cap);
      o.require(err <= cap, "noisy interpolation error at n = " + std::to_string(n));
      o.require(est.estimate.contains(mpq_class(per_one_ryser(x.integers())), 0), "certified ball");
    }
  }
  o.detail << "50 exact recoveries; 200 noisy trials, max error / (sqrt(d+1) eps) = " << worst;
}

// 12. Second moment.
void second_moment(Outcome& o) {
  const RootOfUnity zs[] = {{1, 1}, {2, 1}, {4, 1}, {3, 1}, {5, 1}};
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& z : zs)
      o.require(exact_second_moment(n, z) == mpq_class(factorial(static_cast<std::int64_t>(n))),
                "exact second moment at n = " + std::to_string(n));
  for (const RootOfUnity z : {RootOfUnity{1, 1}, RootOfUnity{3, 1}}) {
    const MomentReport r = moment_estimate(3, z, 1, 100000, DistSpec{}, 12, 1);
    const double ratio = r.estimate / 6.0;
    o.require(ratio >= 0.9 && ratio <= 1.1, "Monte Carlo ratio");
    o.detail << "z = zeta_" << z.m << ": estimate / n! = " << ratio << " (se " << r.std_error / 6.0 << "); ";
  }
  o.detail << "exact = n! for 25 cases";
}

// 13. Fourth moment.
void fourth_moment(Outcome& o) {
  for (std::size_t n = 1; n <= 9; ++n) {
    const FourthMomentIdentity id = fourth_moment_identity(n);
    o.require(id.equal && id.rhs == factorial(static_cast<std::int64_t>(n) + 1),
              "identity at n = " + std::to_string(n));
  }
  const MomentReport r = moment_estimate(3, {1, 1}, 2, 100000, DistSpec{}, 13, 1);
  const double ref = 36.0 * 4.0;
  const double ratio = r.estimate / ref;
  o.require(std::abs(ratio - 1.0) <= 0.1, "Monte Carlo fourth moment");
  o.detail << "identity holds for n <= 9; estimate / (n!)^2 (n+1) = " << ratio << " (se " << r.std_error / ref
           << ")";
}

// 14. Weak anti-concentration.
void anticoncentration(Outcome& o) {
  for (const RootOfUnity z : {RootOfUnity{1, 1}, RootOfUnity{3, 1}}) {
    const AntiConcentrationReport a = anticoncentration_tally(4, z, 0.1, 10000, 14, 1);
    const double lhs = 0.81 / 5.0 - 3.0 * a.std_error;
    o.require(a.empirical_prob > lhs, "tally at z = zeta_" + std::to_string(z.m));
    o.detail << "z = zeta_" << z.m << ": " << a.empirical_prob << " > " << lhs << " (undecided " << a.undecided
             << "); ";
  }
}

// 15. Autocorrelation slopes.
void autocorrelation(Outcome& o) {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(0.05 * i);
  for (DistFamily f : {DistFamily::complex_gaussian, DistFamily::truncated_uniform}) {
    const SlopeTable coarse = autocorr_slopes(f, grid, 1e-4), fine = autocorr_slopes(f, grid, 1e-12);
    const bool finite = std::isfinite(fine.max_G_slope) && std::isfinite(fine.max_H_slope);
    o.require(finite, "finite slopes");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& a = coarse.rows[i];
      const auto& b = fine.rows[i];
      o.require(std::abs(a.G - b.G) <= 0.01 * b.G && std::abs(a.H - b.H) <= 0.01 * b.H,
                "refinement stability for " + dist_family_name(f));
    }
    o.detail << dist_family_name(f) << ": max G/eps = " << fine.max_G_slope << ", max H/x = " << fine.max_H_slope
             << "; ";
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "closed forms for n = 2, 3", 1, closed_forms},
      {2, "subset DP equals brute force", 120, kernel_equivalence},
      {3, "z = 1 permanent, z = -1 determinant", 60, specializations},
      {4, "mod-p reduction", 60, mod_p},
      {5, "high-degree reduction", 30, high_degree},
      {6, "approximate-to-exact recovery", 600, recovery},
      {7, "CAIP round trip", 60, caip_round_trip},
      {8, "separation bound", 120, separation},
      {9, "Berlekamp-Welch", 60, berlekamp_welch_check},
      {10, "random self-reduction", 300, self_reduction},
      {11, "interpolation", 60, interpolation},
      {12, "second moment", 120, second_moment},
      {13, "fourth moment", 120, fourth_moment},
      {14, "weak anti-concentration", 60, anticoncentration},
      {15, "autocorrelation slopes", 60, autocorrelation},
  };
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), c.id) == pick.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, "time budget exceeded");
    failures += !o.pass;
    std::printf("criterion %2d: %s  %s  (%.2f s / %.0f s)  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                c.budget_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures;
}
