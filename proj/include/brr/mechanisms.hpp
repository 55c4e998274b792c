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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "brr/core.hpp"
#include "brr/random.hpp"

namespace brr {

// Bipartite release probabilities: p_star on the m best candidates,
// q_star on the rest. Both share one denominator, so p_star / q_star is
// e^ε up to a single rounding.
struct BrrParams {
  std::size_t n = 0;
  std::size_t m = 1;
  double p_star = 0.0;
  double q_star = 0.0;

  static BrrParams make(std::size_t n, const PrivacyBudget& eps, std::size_t m) {
    if (m < 1 || m > n) throw InvalidInput("split count m must lie in 1..N");
    const double e = eps.exp_eps();
    const double denom = static_cast<double>(m) * e + static_cast<double>(n - m);
    return BrrParams{n, m, e / denom, 1.0 / denom};
  }
};

inline MechanismTable grr(const DiscreteDomain& domain, const PrivacyBudget& eps) {
  const std::size_t n = domain.size();
  const auto params = BrrParams::make(n, eps, 1);
  Matrix p(n, params.q_star);
  for (std::size_t x = 0; x < n; ++x) p(x, x) = params.p_star;
  return MechanismTable(std::move(p), eps, "grr");
}

// Y_m: the first m candidates of the ranked row (always contains the truth).
inline std::vector<CandidateId> construct_ym(const RankedRow& row, std::size_t m) {
  if (m < 1 || m > row.size()) throw InvalidInput("construct_ym: m must lie in 1..N");
  return {row.perm.begin(), row.perm.begin() + static_cast<std::ptrdiff_t>(m)};
}

inline MechanismTable brr_from_ranked(const std::vector<RankedRow>& rows,
                                      const PrivacyBudget& eps, std::size_t m) {
  const std::size_t n = rows.size();
  const auto params = BrrParams::make(n, eps, m);
  Matrix p(n, params.q_star);
  for (const auto& row : rows) {
    for (CandidateId y : construct_ym(row, m)) p(row.priori - 1, y - 1) = params.p_star;
  }
  return MechanismTable(std::move(p), eps, "brr");
}

inline MechanismTable brr(const UtilityTable& table, const PrivacyBudget& eps, std::size_t m) {
  if (m < 1 || m > table.size()) throw InvalidInput("brr: m must lie in 1..N");
  return brr_from_ranked(rank_rows(table), eps, m);
}

// First 0-based index of the m-point window around truth x (0-based) on the
// equidistant line: nearest points first, the lower id winning distance
// ties, clipped at the domain edges.
inline std::size_t equidistant_window_start(std::size_t n, std::size_t x, std::size_t m) {
  // Centered window with the extra slot (even m) on the lower side.
  const std::size_t below = m / 2;
  std::size_t lo = x >= below ? x - below : 0;
  if (lo + m > n) lo = n - m;
  return lo;
}

// Same table as brr(euclidean_loss_table(n), eps, m) without an O(N^2 log N)
// ranking pass; used at large N.
inline MechanismTable brr_equidistant(std::size_t n, const PrivacyBudget& eps, std::size_t m) {
  const auto params = BrrParams::make(n, eps, m);
  Matrix p(n, params.q_star);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t lo = equidistant_window_start(n, x, m);
    for (std::size_t y = lo; y < lo + m; ++y) p(x, y) = params.p_star;
  }
  return MechanismTable(std::move(p), eps, "brr");
}

// Largest column spread of the score table, max_y (max_x u − min_x u).
inline double column_sensitivity(const UtilityTable& table) {
  const std::size_t n = table.size();
  const Matrix& v = table.values();
  double spread = 0.0;
  for (std::size_t y = 0; y < n; ++y) {
    double lo = v(0, y), hi = v(0, y);
    for (std::size_t x = 1; x < n; ++x) {
      lo = std::min(lo, v(x, y));
      hi = std::max(hi, v(x, y));
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

// Exponential mechanism: Pr[y|x] ∝ exp(ε u(x,y) / (2 Δu)), u = −loss for
// loss tables.
inline MechanismTable exponential(const UtilityTable& table, const PrivacyBudget& eps) {
  const std::size_t n = table.size();
  const double sensitivity = column_sensitivity(table);
  const double sign = table.orientation() == Orientation::kLoss ? -1.0 : 1.0;
  Matrix p(n);
  if (sensitivity == 0.0) {
    p = Matrix(n, 1.0 / static_cast<double>(n));
    return MechanismTable(std::move(p), eps, "exp");
  }
  const double scale = eps.epsilon() / (2.0 * sensitivity);
  std::vector<double> w(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto row = table.values().row(x);
    double top = -std::numeric_limits<double>::infinity();
    for (double v : row) top = std::max(top, sign * v);
    double total = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      w[y] = std::exp(scale * (sign * row[y] - top));
      total += w[y];
    }
    for (std::size_t y = 0; y < n; ++y) p(x, y) = w[y] / total;
  }
  return MechanismTable(std::move(p), eps, "exp");
}

// Zero-mean Laplace(b) from a uniform draw u in (0, 1) by inverting the CDF.
inline double laplace_from_uniform(double scale, double u) {
  if (!(scale > 0.0)) throw InvalidInput("Laplace scale must be positive");
  const double c = u - 0.5;
  if (c == 0.0) return 0.0;
  return -scale * std::copysign(1.0, c) * std::log1p(-2.0 * std::abs(c));
}

inline double laplace_noise(double scale, RandomSource& rng) {
  if (!(scale > 0.0)) throw InvalidInput("Laplace scale must be positive");
  return laplace_from_uniform(scale, rng.uniform_open());
}

}  // namespace brr
