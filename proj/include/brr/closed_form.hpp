// Copyright 2026 The BRR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Explicit split count on the equidistant line {1..N} with |x−y| loss, and
// the analytic large-N limits of the BRR/GRR error ratios.
//
// Along the search the derivative numerator at an extreme priori (k = 1 or
// N) and at a middle priori is a quadratic in the step index i:
//
//   extreme:        z1(i) = (e−1)/2 i² + (N − e/2 + 1/2) i − N²/2 − N/2
//   middle, even N: z2(i) = (e−1)/4 i² + (N − (e−1))/2 i + (e−1)/4 − N/2 − N²/4
//   middle, odd N:  z3(i) = z2(i) + 1/4
//
// with e = e^ε. The global minimum split is attained at one of these two
// priori points. Middle rows hold distances in equal pairs, so the search
// there only stops on odd indices: the middle split is the largest odd i
// with z(i) < 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "brr/core.hpp"

namespace brr {

class DegenerateBudget : public std::domain_error {
 public:
  DegenerateBudget()
      : std::domain_error("closed form needs epsilon > 0; use global_search at epsilon = 0") {}
};

class OutsideRegime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class QuadraticCase { kExtreme, kMiddleEven, kMiddleOdd };

inline double quadratic_z(QuadraticCase c, std::size_t n, const PrivacyBudget& eps, double i) {
  const double e = eps.exp_eps();
  const double nn = static_cast<double>(n);
  switch (c) {
    case QuadraticCase::kExtreme:
      return (e - 1.0) / 2.0 * i * i + (nn - e / 2.0 + 0.5) * i - nn * nn / 2.0 - nn / 2.0;
    case QuadraticCase::kMiddleEven:
      return (e - 1.0) / 4.0 * i * i + (nn - (e - 1.0)) / 2.0 * i + (e - 1.0) / 4.0 - nn / 2.0 -
             nn * nn / 4.0;
    case QuadraticCase::kMiddleOdd:
      return (e - 1.0) / 4.0 * i * i + (nn - (e - 1.0)) / 2.0 * i + (e - 1.0) / 4.0 - nn / 2.0 -
             nn * nn / 4.0 + 0.25;
  }
  return 0.0;
}

struct ClosedFormM {
  std::size_t m1 = 1;  // extreme-priori split
  std::size_t m2 = 1;  // middle-priori split (odd)
  std::size_t m = 1;   // min(m1, m2)
  bool exact_root_hit = false;
  // Uncorrected variant: m1 alone for ε >= 1 and an upward parity bump
  // (i + 1) for even middle indices. Diagnostics only; it disagrees with
  // the search on some (N, ε).
  std::size_t literal_m = 1;
};

namespace detail {

// Largest integer i >= 1 with z(i) < 0, starting from floor(root). When the
// floored root lands on z >= 0 (an exact root, or a root rounded up) the
// strict stop rule rejects that step.
template <typename Z>
std::size_t last_negative(double root, Z z, bool& corrected) {
  double f = std::floor(root);
  if (f < 1.0) f = 1.0;
  auto i = static_cast<std::size_t>(f);
  if (i > 1 && z(static_cast<double>(i)) >= 0.0) {
    --i;
    corrected = true;
  } else if (z(static_cast<double>(i + 1)) < 0.0) {
    // sqrt rounded the root down past an integer.
    ++i;
    corrected = true;
  }
  return i;
}

}  // namespace detail

inline ClosedFormM closed_form_m(std::size_t n, const PrivacyBudget& eps) {
  if (n < 2) throw InvalidInput("closed_form_m: N must be at least 2");
  if (eps.epsilon() == 0.0) throw DegenerateBudget();
  const double e = eps.exp_eps();
  const double em1 = std::expm1(eps.epsilon());
  const double nn = static_cast<double>(n);
  ClosedFormM out;

  const double root1 =
      (std::sqrt(nn * nn * e + 0.25 * em1 * em1) - (nn - e / 2.0 + 0.5)) / em1;
  out.m1 = detail::last_negative(
      root1, [&](double i) { return quadratic_z(QuadraticCase::kExtreme, n, eps, i); },
      out.exact_root_hit);

  const bool even = n % 2 == 0;
  const double root2 = even ? nn / (eps.exp_half_eps() + 1.0) + 1.0
                            : (std::sqrt(e * (nn * nn - 1.0) + 1.0) - nn) / em1 + 1.0;
  const auto which = even ? QuadraticCase::kMiddleEven : QuadraticCase::kMiddleOdd;
  const auto raw_i = static_cast<std::size_t>(std::max(1.0, std::floor(root2)));
  const std::size_t i = detail::last_negative(
      root2, [&](double x) { return quadratic_z(which, n, eps, x); }, out.exact_root_hit);
  out.m2 = i % 2 == 1 ? i : i - 1;
  out.m = std::max<std::size_t>(1, std::min(out.m1, out.m2));

  const std::size_t literal_m2 = raw_i % 2 == 1 ? raw_i : raw_i + 1;
  out.literal_m = eps.epsilon() >= 1.0 ? out.m1 : std::min(out.m1, literal_m2);
  return out;
}

// lim m/N = 1 / (e^{ε/2} + 1).
inline double m_over_n_limit(const PrivacyBudget& eps) {
  return 1.0 / (eps.exp_half_eps() + 1.0);
}

struct LocalRatioBounds {
  double sup_limit;
  double inf_limit;
  double gap;
};

// Large-N sup and inf over priori points of Q^(k)(BRR) / Q^(k)(GRR).
inline LocalRatioBounds local_ratio_bounds(const PrivacyBudget& eps) {
  const double t = eps.exp_half_eps();
  const double e = eps.exp_eps();
  const double shrink = (t - 1.0) / (t + 1.0);
  const double root = std::sqrt(e + 2.0 * t + 2.0);
  LocalRatioBounds b;
  b.sup_limit = 2.0 / (t + 1.0);
  b.inf_limit = t - shrink * (root + 1.0);
  // Rationalized form of sup − inf; avoids cancellation near ε = 0.
  b.gap = shrink / (root + t + 1.0);
  return b;
}

// lim Q_g(BRR) / Q_g(GRR) = (7t + 9) / (4 (t + 1)^2), t = e^{ε/2}.
inline double global_ratio_limit(const PrivacyBudget& eps) {
  const double t = eps.exp_half_eps();
  return (7.0 * t + 9.0) / (4.0 * (t + 1.0) * (t + 1.0));
}

// Q_g(BRR) on the equidistant line in closed form, c = m/N. Exact when N
// and m are both odd and m < N; other parities are rejected.
inline double qg_brr_closed(std::size_t n, const PrivacyBudget& eps, std::size_t m) {
  if (n % 2 == 0 || m % 2 == 0 || m < 1 || m >= n) {
    throw OutsideRegime("qg_brr_closed needs odd N, odd m and 1 <= m < N");
  }
  const double e1 = std::expm1(eps.epsilon());
  const double e = eps.exp_eps();
  const double nn = static_cast<double>(n);
  const double c = static_cast<double>(m) / nn;
  const double n2 = nn * nn;
  const double num = e1 * n2 * c * c * c + 3.0 * e1 * n2 * c * c - e1 * c - 3.0 * e - 1.0 + 4.0 * n2;
  return num / (12.0 * (e1 * c + 1.0)) / nn;
}

// Leading-order Q^(k)/N for a priori at normalized offset d = n/N from the
// nearer edge (0 <= d < 1/2), with c = m/N.
inline double grr_local_asymptotic(double d) { return 0.5 * (1.0 - 2.0 * d + 2.0 * d * d); }

inline double brr_local_asymptotic(double c, double d, const PrivacyBudget& eps) {
  const double e = eps.exp_eps();
  const double e1 = std::expm1(eps.epsilon());
  const double g = 1.0 - 2.0 * d + 2.0 * d * d;
  if (2.0 * d >= c) {
    return (c * c * e1 + 2.0 * g) / (4.0 * (1.0 + e1 * c));
  }
  return 0.5 * (g * e + (c - 1.0) * (c + 1.0 - 2.0 * d) * e1) / (e1 * c + 1.0);
}

}  // namespace brr
