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

// Derivative-sign search for the bipartite split count m.
//
// For one priori the release weights start as s = [e^ε, 1, ..., 1] over the
// ranked candidates. Step i (i = 2..N) raises s_i to e^ε while doing so
// improves the expected score, i.e. while the sign of
//
//   dQ/ds_i  ∝  Σ_j (λ_i − λ_j) s_j
//
// is negative for a loss table (positive for a utility table). The split is
// then unified across priori points as the minimum, which keeps every
// priori at least as good as GRR and the mechanism ε-LDP.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "brr/core.hpp"

namespace brr {

// Weights over ranks: the first m are e^ε, the rest 1.
class WeightProfile {
 public:
  WeightProfile(std::size_t n, std::size_t m, double exp_eps) : exp_eps_(exp_eps), s_(n, 1.0) {
    if (m < 1 || m > n) throw InvalidInput("split index must lie in 1..N");
    set_split(m);
  }

  std::size_t split() const { return m_; }
  std::size_t size() const { return s_.size(); }
  const std::vector<double>& weights() const { return s_; }
  double operator[](std::size_t rank) const { return s_[rank]; }

  void set_split(std::size_t m) {
    for (std::size_t i = 0; i < s_.size(); ++i) s_[i] = i < m ? exp_eps_ : 1.0;
    m_ = m;
  }

  // Normalized w_i = s_i / Σ s_j.
  std::vector<double> normalized() const {
    const double total = m_ * exp_eps_ + static_cast<double>(s_.size() - m_);
    std::vector<double> w(s_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = s_[i] / total;
    return w;
  }

 private:
  double exp_eps_;
  std::vector<double> s_;
  std::size_t m_ = 1;
};

// Numerator of dQ/ds_i at 1-based rank i. The denominator (Σ s_j)^2 is
// positive, so the sign is the derivative's sign.
inline double derivative_numerator(const RankedRow& row, const WeightProfile& s, std::size_t i) {
  if (i < 1 || i > row.size() || s.size() != row.size()) {
    throw InvalidInput("derivative_numerator: rank index or profile size mismatch");
  }
  const double li = row.sorted_scores[i - 1];
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += (li - row.sorted_scores[j]) * s[j];
  return acc;
}

struct LocalSearchResult {
  WeightProfile profile;
  std::size_t m = 1;
  // numerators[i-2] is the value tested at step i.
  std::vector<double> numerators;
};

// Greedy split search for one ranked row. The numerator is split as e^ε·A_i + B_i with
// A_i = Σ_{j<i}(λ_i−λ_j) and B_i = Σ_{j>i}(λ_i−λ_j), both updated from
// score differences so tied scores give an exact zero.
inline LocalSearchResult local_search(const RankedRow& row, const PrivacyBudget& eps,
                                      bool keep_numerators = false) {
  const std::size_t n = row.size();
  if (n == 0) throw InvalidInput("local_search: empty row");
  const auto& lam = row.sorted_scores;
  const double e = eps.exp_eps();
  const bool loss = row.orientation == Orientation::kLoss;

  double a = 0.0;
  double b = 0.0;
  for (std::size_t j = 1; j < n; ++j) b += lam[0] - lam[j];

  LocalSearchResult res{WeightProfile(n, 1, e), 1, {}};
  for (std::size_t i = 1; i < n; ++i) {  // 0-based i is rank i+1
    const double step = lam[i] - lam[i - 1];
    a += static_cast<double>(i) * step;
    b += static_cast<double>(n - i) * step;
    const double num = e * a + b;
    if (keep_numerators) res.numerators.push_back(num);
    const bool accept = loss ? num < 0.0 : num > 0.0;
    if (!accept) break;
    res.m = i + 1;
  }
  res.profile.set_split(res.m);
  return res;
}

struct SearchTrace {
  std::vector<std::size_t> per_priori_m;
  std::size_t global_m = 1;
  // Per priori, the numerators tested before the loop stopped.
  std::optional<std::vector<std::vector<double>>> derivative_numerators;
};

inline SearchTrace global_search_ranked(const std::vector<RankedRow>& rows,
                                        const PrivacyBudget& eps, bool keep_numerators = false) {
  if (rows.empty()) throw InvalidInput("global_search: no rows");
  SearchTrace trace;
  trace.per_priori_m.reserve(rows.size());
  if (keep_numerators) trace.derivative_numerators.emplace();
  for (const auto& row : rows) {
    auto res = local_search(row, eps, keep_numerators);
    trace.per_priori_m.push_back(res.m);
    if (keep_numerators) trace.derivative_numerators->push_back(std::move(res.numerators));
  }
  trace.global_m = *std::min_element(trace.per_priori_m.begin(), trace.per_priori_m.end());
  return trace;
}

// Local search at every priori, then m = min_k m^(k).
inline SearchTrace global_search(const UtilityTable& table, const PrivacyBudget& eps,
                                 bool keep_numerators = false) {
  return global_search_ranked(rank_rows(table), eps, keep_numerators);
}

}  // namespace brr
