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

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "brr/closed_form.hpp"
#include "brr/core.hpp"
#include "brr/mechanisms.hpp"
#include "brr/random.hpp"
#include "brr/search.hpp"

namespace brr {

inline UtilityTable euclidean_loss_table(std::size_t n) {
  if (n < 2) throw InvalidInput("euclidean_loss_table: N must be at least 2");
  Matrix v(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) v(k, j) = static_cast<double>(k > j ? k - j : j - k);
  }
  return UtilityTable(std::move(v), Orientation::kLoss);
}

// Generalized Jaccard (Tanimoto) similarity of positive labels:
// xy / (x² + y² − xy).
inline double jaccard_similarity(double x, double y) { return x * y / (x * x + y * y - x * y); }

inline UtilityTable jaccard_utility_table(std::size_t n) {
  if (n < 1) throw InvalidInput("jaccard_utility_table: N must be at least 1");
  Matrix v(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      v(k, j) = k == j ? 1.0 : jaccard_similarity(static_cast<double>(k + 1),
                                                  static_cast<double>(j + 1));
    }
  }
  return UtilityTable(std::move(v), Orientation::kUtility);
}

// Ranked row of the equidistant |x−y| table built in O(N): walk outwards
// from k, lower side first on ties.
inline RankedRow equidistant_ranked_row(std::size_t n, CandidateId k) {
  RankedRow row;
  row.priori = k;
  row.orientation = Orientation::kLoss;
  row.perm.reserve(n);
  row.sorted_scores.reserve(n);
  row.perm.push_back(k);
  row.sorted_scores.push_back(0.0);
  for (std::size_t d = 1; row.perm.size() < n; ++d) {
    if (k > d) {
      row.perm.push_back(k - d);
      row.sorted_scores.push_back(static_cast<double>(d));
    }
    if (k + d <= n) {
      row.perm.push_back(k + d);
      row.sorted_scores.push_back(static_cast<double>(d));
    }
  }
  return row;
}

// Global split for the equidistant line: closed form for ε > 0, search at
// ε = 0 (every split gives the uniform table there).
inline std::size_t equidistant_split(std::size_t n, const PrivacyBudget& eps) {
  if (eps.epsilon() > 0.0) return closed_form_m(n, eps).m;
  std::vector<RankedRow> rows;
  rows.reserve(n);
  for (CandidateId k = 1; k <= n; ++k) rows.push_back(equidistant_ranked_row(n, k));
  return global_search_ranked(rows, eps).global_m;
}

struct GeneralBrr {
  MechanismTable mechanism;
  SearchTrace trace;
};

// Search-backed BRR for any score table, loss or utility.
inline GeneralBrr general_brr(const UtilityTable& table, const PrivacyBudget& eps) {
  const auto rows = rank_rows(table);
  auto trace = global_search_ranked(rows, eps);
  auto mech = brr_from_ranked(rows, eps, trace.global_m);
  return {std::move(mech), std::move(trace)};
}

// N equally spaced points on [a, b].
class IntervalSpec {
 public:
  IntervalSpec(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
      throw InvalidInput("interval needs finite a < b");
    }
    if (n < 2) throw InvalidInput("interval needs at least 2 grid points");
  }

  double lower() const { return a_; }
  double upper() const { return b_; }
  std::size_t size() const { return n_; }
  double spacing() const { return (b_ - a_) / static_cast<double>(n_ - 1); }
  // 1-based grid point.
  double point(std::size_t j) const {
    if (j == n_) return b_;
    return a_ + static_cast<double>(j - 1) * spacing();
  }

 private:
  double a_, b_;
  std::size_t n_;
};

struct NearestPoint {
  std::size_t index = 1;  // 1-based
  double value = 0.0;
  bool clamped = false;
};

// Closest grid point; midpoints go to the lower index, out-of-range inputs
// are clamped to the nearer end and flagged.
inline NearestPoint nearest_point(const IntervalSpec& spec, double x) {
  NearestPoint out;
  if (std::isnan(x)) throw InvalidInput("nearest_point: NaN input");
  if (x <= spec.lower() || x >= spec.upper()) {
    out.clamped = x < spec.lower() || x > spec.upper();
    out.index = x <= spec.lower() ? 1 : spec.size();
    out.value = spec.point(out.index);
    return out;
  }
  const double pos = (x - spec.lower()) / spec.spacing();  // 0-based fractional
  auto lo = static_cast<std::size_t>(std::floor(pos)) + 1;
  if (lo >= spec.size()) lo = spec.size() - 1;
  // Compare true distances so the midpoint rule is decided on the grid values.
  const double dlo = x - spec.point(lo);
  const double dhi = spec.point(lo + 1) - x;
  out.index = dhi < dlo ? lo + 1 : lo;
  out.value = spec.point(out.index);
  return out;
}

// BRR release on an interval grid: snap to the nearest point, then release
// a grid value with p_star inside the m-point window around it and q_star
// elsewhere.
class ContinuousBrr {
 public:
  ContinuousBrr(IntervalSpec spec, const PrivacyBudget& eps)
      : spec_(spec),
        eps_(eps),
        params_(BrrParams::make(spec.size(), eps, equidistant_split(spec.size(), eps))) {}

  const IntervalSpec& spec() const { return spec_; }
  const BrrParams& params() const { return params_; }
  std::size_t split() const { return params_.m; }

  // Release probabilities over the grid for a snapped index (1-based).
  std::vector<double> release_row(std::size_t index) const {
    const std::size_t n = spec_.size();
    std::vector<double> row(n, params_.q_star);
    const std::size_t lo = equidistant_window_start(n, index - 1, params_.m);
    for (std::size_t y = lo; y < lo + params_.m; ++y) row[y] = params_.p_star;
    return row;
  }

  std::size_t perturb_index(std::size_t index, RandomSource& rng) const {
    const auto row = release_row(index);
    return sample_index(row, rng.uniform()) + 1;
  }

  double perturb(double x, RandomSource& rng) const {
    const auto snapped = nearest_point(spec_, x);
    return spec_.point(perturb_index(snapped.index, rng));
  }

 private:
  IntervalSpec spec_;
  PrivacyBudget eps_;
  BrrParams params_;
};

inline double perturb_continuous(const IntervalSpec& spec, const PrivacyBudget& eps, double x,
                                 RandomSource& rng) {
  return ContinuousBrr(spec, eps).perturb(x, rng);
}

}  // namespace brr
