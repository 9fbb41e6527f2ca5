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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "qperm/error.hpp"
#include "qperm/selfreduce.hpp"

namespace qperm {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kTail = 40.0;  // Gaussian mass beyond 40 sigma is below 1e-340

double base_density(DistFamily f, double x) {
  if (f == DistFamily::complex_gaussian) return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return std::abs(x) <= kSqrt3 ? 1.0 / (2.0 * kSqrt3) : 0.0;
}

// Integrates |h| over consecutive breakpoints; h keeps one sign on each piece.
template <class F>
double integrate_abs(F h, const std::vector<double>& cuts, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate([&](double x) { return std::abs(h(x)); }, cuts[i],
                                                          cuts[i + 1], 20, tol, &err);
    require(err <= std::max(tol * std::abs(v), 1e-15) * 10.0, ErrorCode::QuadratureNonConvergence,
            "quadrature did not reach the requested tolerance");
    total += v;
  }
  return total;
}

}  // namespace

double tv_scale(DistFamily family, double eps, double tol) {
  require(eps >= 0.0 && eps < 0.5, ErrorCode::InvalidArgument, "tv_scale: eps must lie in [0, 1/2)");
  if (eps == 0.0) return 0.0;
  const double s = 1.0 - eps;
  auto h = [&](double x) { return base_density(family, x) - base_density(family, x / s) / s; };
  // Symmetric: TV = (1/2) * 2 * integral over [0, inf).
  std::vector<double> cuts;
  if (family == DistFamily::complex_gaussian) {
    const double c = s * std::sqrt(-2.0 * std::log(s) / (1.0 - s * s));
    cuts = {0.0, c, kTail};
  } else {
    cuts = {0.0, s * kSqrt3, kSqrt3};
  }
  return integrate_abs(h, cuts, tol);
}

double tv_shift(DistFamily family, double x, double tol) {
  x = std::abs(x);
  if (x == 0.0) return 0.0;
  auto h = [&](double t) { return base_density(family, t) - base_density(family, t - x); };
  std::vector<double> cuts;
  if (family == DistFamily::complex_gaussian) {
    cuts = {-kTail, x / 2.0, x + kTail};
  } else {
    if (x >= 2.0 * kSqrt3) return 1.0;
    cuts = {-kSqrt3, x - kSqrt3, kSqrt3, x + kSqrt3};
  }
  return 0.5 * integrate_abs(h, cuts, tol);
}

AutocorrReport autocorr_check(DistFamily family, double eps, const std::vector<std::complex<double>>& v, double m1,
                              double m2, double tol) {
  require(eps >= 0.0 && eps < 0.5, ErrorCode::InvalidArgument, "autocorr_check: eps must lie in [0, 1/2)");
  AutocorrReport r;
  const double n = static_cast<double>(v.size());
  r.G = tv_scale(family, eps, tol);
  // Each complex coordinate has two independent real parts of variance 1/2;
  // TV is scale invariant and subadditive over independent coordinates.
  r.G_total = 2.0 * n * r.G;
  double norm2 = 0.0;
  for (const auto& c : v) {
    r.H_total += tv_shift(family, std::sqrt(2.0) * c.real(), tol) + tv_shift(family, std::sqrt(2.0) * c.imag(), tol);
    norm2 += std::norm(c);
  }
  r.bound1 = 2.0 * n * m1 * eps;
  r.bound2 = std::sqrt(2.0 * n) * m2 * std::sqrt(norm2);
  r.pass = r.G_total <= r.bound1 * (1.0 + 1e-12) && r.H_total <= r.bound2 * (1.0 + 1e-12);
  return r;
}

SlopeTable autocorr_slopes(DistFamily family, const std::vector<double>& grid, double tol) {
  SlopeTable t;
  for (double x : grid) {
    require(x > 0.0, ErrorCode::InvalidArgument, "autocorr_slopes: grid points must be positive");
    SlopeRow row{x, tv_scale(family, x, tol), tv_shift(family, x, tol)};
    t.max_G_slope = std::max(t.max_G_slope, row.G / x);
    t.max_H_slope = std::max(t.max_H_slope, row.H / x);
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace qperm
