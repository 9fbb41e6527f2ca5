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

#include <cmath>
#include <complex>
#include <limits>

namespace qperm {

// Complex double midpoint with an upward-safe absolute radius. Each
// operation adds a relative rounding term of 4u times the operand scale
// (u = 2^-53), which dominates the IEEE error of complex add and multiply.
struct DoubleBall {
  std::complex<double> mid{0.0, 0.0};
  double rad = 0.0;

  static constexpr double kU = std::numeric_limits<double>::epsilon() / 2;

  DoubleBall() = default;
  DoubleBall(std::complex<double> m, double r = 0.0) : mid(m), rad(r) {}  // NOLINT

  static double mag(std::complex<double> z) { return std::abs(z) * (1 + 4 * kU); }

  friend DoubleBall operator+(const DoubleBall& a, const DoubleBall& b) {
    DoubleBall c(a.mid + b.mid);
    c.rad = (a.rad + b.rad + 4 * kU * (mag(a.mid) + mag(b.mid))) * (1 + 4 * kU);
    return c;
  }
  friend DoubleBall operator*(const DoubleBall& a, const DoubleBall& b) {
    DoubleBall c(a.mid * b.mid);
    double am = mag(a.mid), bm = mag(b.mid);
    c.rad = (am * b.rad + bm * a.rad + a.rad * b.rad + 4 * kU * am * bm) * (1 + 4 * kU);
    return c;
  }
  DoubleBall& operator+=(const DoubleBall& b) { return *this = *this + b; }

  double abs_upper() const { return (mag(mid) + rad) * (1 + 4 * kU); }
  // Bounds on |z|^2.
  double abs_sq_upper() const {
    double u = abs_upper();
    return u * u * (1 + 4 * kU);
  }
  double abs_sq_lower() const {
    double l = std::abs(mid) * (1 - 4 * kU) - rad;
    return l <= 0 ? 0.0 : l * l * (1 - 4 * kU);
  }
};

}  // namespace qperm
