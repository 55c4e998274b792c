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

// Expected-score metrics of a release table against a score table:
// local Q^(k) = Σ_y score(k, y) Pr[y|k], global Q_g = uniform mean over k,
// and QLoss = Q_g / (N − 1) on the equidistant line.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brr/core.hpp"
#include "brr/mechanisms.hpp"
#include "brr/random.hpp"

namespace brr {

struct MetricsReport {
  std::vector<double> per_priori_q;
  double q_global = 0.0;
  // Set only for the equidistant |x−y| loss table.
  std::optional<double> q_loss;
  std::optional<std::string> baseline_name;
  std::optional<double> ratio_to_baseline;
};

inline void check_same_size(const UtilityTable& table, const MechanismTable& mech) {
  if (table.size() != mech.size()) {
    throw InvalidInput("utility table has N=" + std::to_string(table.size()) +
                       " but mechanism has N=" + std::to_string(mech.size()));
  }
}

inline double local_expected_error(const UtilityTable& table, const MechanismTable& mech,
                                   CandidateId k) {
  check_same_size(table, mech);
  if (k < 1 || k > table.size()) throw InvalidInput("priori id out of range");
  const auto scores = table.values().row(k - 1);
  const auto probs = mech.row(k);
  double q = 0.0;
  for (std::size_t y = 0; y < scores.size(); ++y) q += scores[y] * probs[y];
  return q;
}

// Same quantity evaluated over ranks, Σ_i λ_i w_i.
inline double local_expected_error_ranked(const RankedRow& row, const MechanismTable& mech) {
  if (row.size() != mech.size()) throw InvalidInput("ranked row and mechanism differ in N");
  const auto probs = mech.row(row.priori);
  double q = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) q += row.sorted_scores[i] * probs[row.perm[i] - 1];
  return q;
}

inline void fill_qloss(MetricsReport& rep, std::size_t n, bool equidistant) {
  if (equidistant && n >= 2) rep.q_loss = rep.q_global / static_cast<double>(n - 1);
}

// prior_weights, if given, must have length N and sum to 1; the default is
// the uniform average.
inline MetricsReport global_expected_error(const UtilityTable& table, const MechanismTable& mech,
                                           std::span<const double> prior_weights = {}) {
  check_same_size(table, mech);
  const std::size_t n = table.size();
  if (!prior_weights.empty() && prior_weights.size() != n) {
    throw InvalidInput("prior weights must have length N");
  }
  MetricsReport rep;
  rep.per_priori_q.reserve(n);
  double acc = 0.0;
  for (CandidateId k = 1; k <= n; ++k) {
    const double q = local_expected_error(table, mech, k);
    rep.per_priori_q.push_back(q);
    acc += prior_weights.empty() ? q : q * prior_weights[k - 1];
  }
  rep.q_global = prior_weights.empty() ? acc / static_cast<double>(n) : acc;
  fill_qloss(rep, n, is_equidistant_euclidean(table));
  return rep;
}

struct RatioReport {
  // nullopt where the baseline's local error is zero.
  std::vector<std::optional<double>> per_priori;
  double global = 0.0;
  MetricsReport a;
  MetricsReport b;
};

inline RatioReport ratio_from_metrics(MetricsReport a, MetricsReport b) {
  if (a.per_priori_q.size() != b.per_priori_q.size()) {
    throw InvalidInput("ratio: reports differ in N");
  }
  if (b.q_global == 0.0) throw InvalidInput("ratio undefined: baseline has zero global error");
  RatioReport r;
  r.per_priori.reserve(a.per_priori_q.size());
  for (std::size_t k = 0; k < a.per_priori_q.size(); ++k) {
    if (b.per_priori_q[k] == 0.0) {
      r.per_priori.emplace_back(std::nullopt);
    } else {
      r.per_priori.emplace_back(a.per_priori_q[k] / b.per_priori_q[k]);
    }
  }
  r.global = a.q_global / b.q_global;
  r.a = std::move(a);
  r.b = std::move(b);
  return r;
}

inline RatioReport ratio_report(const UtilityTable& table, const MechanismTable& mech_a,
                                const MechanismTable& mech_b) {
  auto a = global_expected_error(table, mech_a);
  auto b = global_expected_error(table, mech_b);
  a.baseline_name = mech_b.name();
  return ratio_from_metrics(std::move(a), std::move(b));
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

// Uniform priori, one release per draw, score averaged with Welford updates.
inline MonteCarloEstimate monte_carlo_q(const UtilityTable& table, const MechanismTable& mech,
                                        std::size_t samples, RandomSource& rng) {
  check_same_size(table, mech);
  if (samples < 1) throw InvalidInput("monte_carlo_q needs at least one sample");
  const std::size_t n = table.size();
  double mean = 0.0, m2 = 0.0;
  for (std::size_t t = 0; t < samples; ++t) {
    const CandidateId k = rng.below(n) + 1;
    const CandidateId y = sample(mech, k, rng);
    const double v = table(k, y);
    const double delta = v - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (v - mean);
  }
  MonteCarloEstimate est{mean, 0.0, samples};
  if (samples > 1) {
    const double var = m2 / static_cast<double>(samples - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(samples));
  }
  return est;
}

// ---------------------------------------------------------------------------
// Equidistant |x−y| loss without materializing N×N tables. The sorted
// distances from priori k are [0, 1,1, 2,2, ..., a,a, a+1, ..., b] with
// a = min(k−1, N−k), b = max(k−1, N−k), so every row sum is O(1).

// Sum of the m smallest distances from priori k (1-based).
inline double equidistant_prefix_sum(std::size_t n, std::size_t k, std::size_t m) {
  const std::size_t a = std::min(k - 1, n - k);
  const auto tri = [](double x) { return x * (x + 1.0) / 2.0; };
  if (m <= 2 * a + 1) {
    const std::size_t pairs = (m - 1) / 2;  // complete pairs after the 0
    double s = 2.0 * tri(static_cast<double>(pairs));
    if ((m - 1) % 2 == 1) s += static_cast<double>(pairs + 1);
    return s;
  }
  const std::size_t tail = m - (2 * a + 1);  // a+1, ..., a+tail
  return 2.0 * tri(static_cast<double>(a)) + tri(static_cast<double>(a + tail)) -
         tri(static_cast<double>(a));
}

inline double equidistant_row_total(std::size_t n, std::size_t k) {
  const auto tri = [](double x) { return x * (x + 1.0) / 2.0; };
  return tri(static_cast<double>(k - 1)) + tri(static_cast<double>(n - k));
}

// Q^(k) of BRR with split m (m = 1 is GRR).
inline double equidistant_local_error(std::size_t n, const PrivacyBudget& eps, std::size_t m,
                                      std::size_t k) {
  const auto p = BrrParams::make(n, eps, m);
  const double head = equidistant_prefix_sum(n, k, m);
  const double total = equidistant_row_total(n, k);
  return p.p_star * head + p.q_star * (total - head);
}

inline MetricsReport equidistant_global_error(std::size_t n, const PrivacyBudget& eps,
                                              std::size_t m) {
  if (n < 2) throw InvalidInput("equidistant domain needs N >= 2");
  MetricsReport rep;
  rep.per_priori_q.reserve(n);
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double q = equidistant_local_error(n, eps, m, k);
    rep.per_priori_q.push_back(q);
    acc += q;
  }
  rep.q_global = acc / static_cast<double>(n);
  fill_qloss(rep, n, true);
  return rep;
}

}  // namespace brr
