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
#include <complex>
#include <limits>
#include <numbers>

#include "qperm/cyclotomic.hpp"
#include "qperm/error.hpp"
#include "qperm/recovery.hpp"

namespace qperm {

namespace {

using cd = std::complex<double>;
constexpr double kU = std::numeric_limits<double>::epsilon() / 2;


class Decider {
 public:
  Decider(const CaipInstance& inst, CaipStats* stats)
      : inst_(inst), stats_(stats), phi_(static_cast<std::size_t>(totient(inst.m))) {
    require(inst.bounds.size() == phi_, ErrorCode::InvalidArgument, "caip: need phi(m) bounds");
    require(inst.T >= 1, ErrorCode::InvalidArgument, "caip: T must be >= 1");
    require(phi_ <= 8, ErrorCode::CapExceeded, "caip: phi(m) above the desk-scale cap of 8");
    double sum_l = 0.0;
    for (std::size_t i = 0; i < phi_; ++i) {
      require(inst.bounds[i] >= 0, ErrorCode::InvalidArgument, "caip: bounds must be nonnegative");
      require(inst.bounds[i] < (mpz_class(1) << 40), ErrorCode::CapExceeded, "caip: coefficient bound too large");
      bounds_.push_back(inst.bounds[i].get_si());
      const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(inst.m);
      xi_.emplace_back(std::cos(th), std::sin(th));
      sum_l += static_cast<double>(bounds_.back());
    }
    alpha_ = cd(inst.alpha.re().to_double(), inst.alpha.im().to_double());
    inv_t_ = mpq_class(mpz_class(1), inst.T).get_d();
    err_ = add_up(inst.alpha.radius(),
                  16.0 * static_cast<double>(phi_ + 2) * kU * (std::abs(alpha_) + sum_l + 1.0));
    reach_ = 2.0 * inv_t_ * (1.0 + 1e-12) + err_;
  }

  CaipAnswer run() {
    std::vector<long> b(phi_, 0);
    bool close = descend(alpha_, static_cast<long>(phi_) - 1, b);
    if (close) return CaipAnswer::close;
    require(!violation_, ErrorCode::PromiseViolated,
            "caip: nearest bounded algebraic integer lies in the promise gap (1/T, 2/T)");
    return CaipAnswer::far;
  }

 private:
  // Integer interval for the coefficient of xi^j so that w - b xi^j can still
  // reach the zonotope of the lower generators within `reach_`.
  bool interval(const cd& w, long j, long& lo, long& hi) {
    double xlo = 0.0, xhi = static_cast<double>(bounds_[j]);
    auto constrain = [&](const cd& u) {
      double zmin = 0.0, zmax = 0.0;
      for (long i = 0; i < j; ++i) {
        const double p = static_cast<double>(bounds_[i]) * (xi_[i].real() * u.real() + xi_[i].imag() * u.imag());
        (p < 0 ? zmin : zmax) += p;
      }
      const double slack = reach_ + 8.0 * kU * (std::abs(w) + static_cast<double>(bounds_[j]) + std::abs(zmin) + zmax);
      const double wu = w.real() * u.real() + w.imag() * u.imag();
      const double c = xi_[j].real() * u.real() + xi_[j].imag() * u.imag();
      const double a = wu - zmax - slack, bnd = wu - zmin + slack;  // a <= b c <= bnd
      if (std::abs(c) < 1e-9) return a <= 0.0 && 0.0 <= bnd;
      double l = a / c, h = bnd / c;
      if (c < 0) std::swap(l, h);
      xlo = std::max(xlo, l);
      xhi = std::min(xhi, h);
      return xlo <= xhi + 1e-6;
    };
    const cd rot(0.0, 1.0);
    if (!constrain(rot * xi_[j])) return false;
    bool any_lower = false;
    for (long i = 0; i < j; ++i) {
      if (bounds_[i] == 0) continue;
      any_lower = true;
      if (!constrain(rot * xi_[i])) return false;
    }
    if (!any_lower && !constrain(xi_[j])) return false;
    lo = static_cast<long>(std::ceil(xlo - 1e-9 * (1.0 + std::abs(xlo))));
    hi = static_cast<long>(std::floor(xhi + 1e-9 * (1.0 + std::abs(xhi))));
    lo = std::max(lo, 0L);
    hi = std::min(hi, bounds_[j]);
    return lo <= hi;
  }

  bool descend(const cd& w, long j, std::vector<long>& b) {
    if (stats_) ++stats_->nodes;
    if (j <= 1) return solve_tail(w, j, b);
    long lo = 0, hi = -1;
    if (!interval(w, j, lo, hi)) return false;
    for (long v = lo; v <= hi; ++v) {
      b[j] = v;
      if (descend(w - static_cast<double>(v) * xi_[j], j - 1, b)) return true;
    }
    b[j] = 0;
    return false;
  }

  // Remaining unknowns b_j..b_0 with j in {0, 1}.
  bool solve_tail(const cd& w, long j, std::vector<long>& b) {
    if (j == 0) {
      if (std::abs(w.imag()) > reach_) return false;
      long lo = std::max(0L, static_cast<long>(std::ceil(w.real() - reach_ - 1e-9)));
      long hi = std::min(bounds_[0], static_cast<long>(std::floor(w.real() + reach_ + 1e-9)));
      for (long v = lo; v <= hi; ++v) {
        b[0] = v;
        if (leaf(w - static_cast<double>(v), b)) return true;
      }
      b[0] = 0;
      return false;
    }
    const double s = xi_[1].imag();
    long lo = std::max(0L, static_cast<long>(std::ceil((w.imag() - reach_) / s - 1e-9)));
    long hi = std::min(bounds_[1], static_cast<long>(std::floor((w.imag() + reach_) / s + 1e-9)));
    for (long v = lo; v <= hi; ++v) {
      b[1] = v;
      if (solve_tail(w - static_cast<double>(v) * xi_[1], 0, b)) return true;
    }
    b[1] = 0;
    return false;
  }

  // Returns true when b is certainly within 1/T of alpha.
  bool leaf(const cd& resid, const std::vector<long>& b) {
    if (stats_) ++stats_->leaves;
    const double d = std::abs(resid);
    if (d - err_ >= 2.0 * inv_t_ * (1.0 + 1e-12)) return false;
    if (d + err_ <= inv_t_ * (1.0 - 1e-12)) return true;
    switch (exact_classify(b)) {
      case 0: return true;
      case 1: return false;
      default: violation_ = true; return false;
    }
  }

  // 0: within 1/T, 1: at least 2/T away, 2: inside the gap or unresolved.
  int exact_classify(const std::vector<long>& b) {
    if (stats_) ++stats_->exact_checks;
    const mpq_class inv_t(mpz_class(1), inst_.T);
    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(inst_.alpha.precision(), 128); prec <= 4096; prec *= 2) {
      ComplexBall lattice(prec);
      for (std::size_t i = 0; i < phi_; ++i)
        if (b[i] != 0)
          lattice += ComplexBall::from_integer(mpz_class(b[i]), prec) *
                     root_of_unity(static_cast<long>(i), static_cast<long>(inst_.m), prec);
      ComplexBall diff = inst_.alpha.with_precision(prec) - lattice;
      Real lo(prec), hi(prec);
      diff.abs_sq_bounds(lo, hi);
      Real t1(inv_t * inv_t, prec, MPFR_RNDN), t2(4 * inv_t * inv_t, prec, MPFR_RNDN);
      // Thresholds are exact enough: compare against slightly shrunk/widened copies.
      if (mpfr_cmp(hi.get(), t1.get()) < 0) return 0;
      if (mpfr_cmp(lo.get(), t2.get()) > 0) return 1;
      if (mpfr_cmp(lo.get(), t1.get()) > 0 && mpfr_cmp(hi.get(), t2.get()) < 0) return 2;
      if (diff.radius() > 0.0 && prec >= inst_.alpha.precision() * 4) break;
    }
    return 2;
  }

  const CaipInstance& inst_;
  CaipStats* stats_;
  std::size_t phi_;
  std::vector<long> bounds_;
  std::vector<cd> xi_;
  cd alpha_;
  double inv_t_ = 0.0;
  double err_ = 0.0;
  double reach_ = 0.0;
  bool violation_ = false;
};

ComplexBall shift_down(const ComplexBall& a, const std::vector<mpz_class>& c, std::int64_t m) {
  ComplexBall out = a;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0)
      out -= ComplexBall::from_integer(c[i], a.precision()) *
             root_of_unity(static_cast<long>(i), static_cast<long>(m), a.precision());
  return out;
}

}  // namespace

CaipAnswer caip_decide(const CaipInstance& inst, CaipStats* stats) {
  validate_root(RootOfUnity{inst.m, 1});
  return Decider(inst, stats).run();
}

CaipAnswer caip_decide_shifted(const ComplexBall& alpha, const std::vector<mpz_class>& lower,
                               const std::vector<mpz_class>& upper, const mpz_class& T, std::int64_t m,
                               CaipStats* stats) {
  require(lower.size() == upper.size(), ErrorCode::InvalidArgument, "caip: bound vectors differ in length");
  CaipInstance inst;
  inst.alpha = shift_down(alpha, lower, m);
  inst.T = T;
  inst.m = m;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    require(upper[i] >= lower[i], ErrorCode::InvalidArgument, "caip: empty coefficient range");
    inst.bounds.push_back(upper[i] - lower[i]);
  }
  return caip_decide(inst, stats);
}

CaipSearchResult caip_search(const ComplexBall& alpha, const std::vector<mpz_class>& bounds, const mpz_class& T,
                             std::int64_t m) {
  CaipSearchResult res;
  const std::size_t phi = static_cast<std::size_t>(totient(m));
  require(bounds.size() == phi, ErrorCode::InvalidArgument, "caip_search: need phi(m) bounds");
  // Enough bits that the running shifts stay far below 1/T.
  std::int64_t bits = static_cast<std::int64_t>(mpz_sizeinbase(T.get_mpz_t(), 2)) + 64;
  for (const auto& l : bounds) bits += static_cast<std::int64_t>(mpz_sizeinbase(l.get_mpz_t(), 2));
  CaipInstance inst;
  inst.alpha = alpha.with_precision(std::max<mpfr_prec_t>(alpha.precision(), bits));
  inst.bounds = bounds;
  inst.T = T;
  inst.m = m;

  ++res.decide_queries;
  if (caip_decide(inst, &res.stats) == CaipAnswer::far) return res;

  std::vector<mpz_class> coeffs(phi, 0);
  for (std::size_t jj = phi; jj-- > 0;) {
    // Binary search for b_j in [W, W + U], with the lower coordinates free.
    mpz_class w = 0, u = bounds[jj];
    while (u > 0) {
      const mpz_class r = u / 2;
      inst.bounds[jj] = r;
      ++res.decide_queries;
      if (caip_decide(inst, &res.stats) == CaipAnswer::close) {
        u = r;
      } else {
        std::vector<mpz_class> s(phi, 0);
        s[jj] = r + 1;
        inst.alpha = shift_down(inst.alpha, s, m);
        w += r + 1;
        u -= r + 1;
      }
    }
    coeffs[jj] = w;
    inst.bounds[jj] = 0;
  }
  res.coeffs = std::move(coeffs);
  return res;
}

}  // namespace qperm
