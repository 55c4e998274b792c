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

// Shared value types: privacy budget, discrete domain, score tables, ranked
// rows and release-probability tables, plus the LDP validator.
//
// Candidate ids are 1-based everywhere in the public API (1..N). Matrix
// element access is 0-based.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace brr {

using CandidateId = std::size_t;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Privacy parameter ε with its cached exponential.
class PrivacyBudget {
 public:
  static constexpr double kMaxEpsilon = 700.0;

  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw InvalidInput("privacy budget must be a finite non-negative number");
    }
    if (epsilon > kMaxEpsilon) {
      throw InvalidInput("privacy budget above 700 overflows e^epsilon");
    }
    exp_eps_ = std::exp(epsilon);
  }

  double epsilon() const { return epsilon_; }
  double exp_eps() const { return exp_eps_; }
  // e^{ε/2}, the quantity every asymptotic formula is written in.
  double exp_half_eps() const { return std::exp(epsilon_ / 2.0); }

 private:
  double epsilon_;
  double exp_eps_;
};

class DiscreteDomain {
 public:
  explicit DiscreteDomain(std::size_t size) : size_(size) {
    if (size < 2) throw InvalidInput("discrete domain needs at least 2 candidates");
  }
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

// Dense row-major square matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * n_, n_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * n_, n_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

enum class Orientation { kLoss, kUtility };

inline const char* to_string(Orientation o) {
  return o == Orientation::kLoss ? "loss" : "utility";
}

// Score of releasing candidate j when the truth is k. Loss tables are
// minimized, utility tables maximized; either way the truth scores best in
// its own row.
class UtilityTable {
 public:
  UtilityTable(Matrix values, Orientation orientation)
      : values_(std::move(values)), orientation_(orientation) {
    const std::size_t n = values_.size();
    if (n == 0) throw InvalidInput("utility table is empty");
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = values_.row(k);
      for (double v : row) {
        if (!std::isfinite(v)) throw InvalidInput("utility table has a non-finite entry");
      }
      const double diag = row[k];
      const bool ok = orientation_ == Orientation::kLoss
                          ? diag == *std::min_element(row.begin(), row.end())
                          : diag == *std::max_element(row.begin(), row.end());
      if (!ok) {
        throw InvalidInput("row " + std::to_string(k + 1) +
                           ": the truth must have the best score in its own row");
      }
    }
  }

  // Builds a table from nested rows, checking squareness.
  static UtilityTable from_rows(const std::vector<std::vector<double>>& rows,
                                Orientation orientation) {
    const std::size_t n = rows.size();
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) {
        throw InvalidInput("utility table is not square: row " + std::to_string(r + 1) +
                           " has " + std::to_string(rows[r].size()) + " columns, expected " +
                           std::to_string(n));
      }
      std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return UtilityTable(std::move(m), orientation);
  }

  std::size_t size() const { return values_.size(); }
  Orientation orientation() const { return orientation_; }
  const Matrix& values() const { return values_; }
  // 1-based.
  double operator()(CandidateId k, CandidateId j) const { return values_(k - 1, j - 1); }

 private:
  Matrix values_;
  Orientation orientation_;
};

// True for the loss table |k − j| on {1..N}.
inline bool is_equidistant_euclidean(const UtilityTable& table) {
  if (table.orientation() != Orientation::kLoss) return false;
  const std::size_t n = table.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (table.values()(k, j) != static_cast<double>(k > j ? k - j : j - k)) return false;
    }
  }
  return true;
}

// One priori's candidates sorted best-first by score.
struct RankedRow {
  CandidateId priori = 0;
  Orientation orientation = Orientation::kLoss;
  std::vector<double> sorted_scores;
  std::vector<CandidateId> perm;  // rank (0-based) -> candidate id

  std::size_t size() const { return sorted_scores.size(); }
  friend bool operator==(const RankedRow&, const RankedRow&) = default;
};

inline std::size_t id_distance(CandidateId a, CandidateId b) { return a > b ? a - b : b - a; }

// Ties on score are broken by smaller |j - k|, then smaller id, so the
// truth always ranks first and Y_m is deterministic.
inline RankedRow rank_row(const UtilityTable& table, CandidateId k) {
  const std::size_t n = table.size();
  if (k < 1 || k > n) throw InvalidInput("priori id out of range");
  RankedRow out;
  out.priori = k;
  out.orientation = table.orientation();
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), CandidateId{1});
  const bool loss = table.orientation() == Orientation::kLoss;
  std::sort(out.perm.begin(), out.perm.end(), [&](CandidateId a, CandidateId b) {
    const double sa = table(k, a);
    const double sb = table(k, b);
    if (sa != sb) return loss ? sa < sb : sa > sb;
    const std::size_t da = id_distance(a, k);
    const std::size_t db = id_distance(b, k);
    if (da != db) return da < db;
    return a < b;
  });
  out.sorted_scores.reserve(n);
  for (CandidateId j : out.perm) out.sorted_scores.push_back(table(k, j));
  return out;
}

inline std::vector<RankedRow> rank_rows(const UtilityTable& table) {
  std::vector<RankedRow> rows;
  rows.reserve(table.size());
  for (CandidateId k = 1; k <= table.size(); ++k) rows.push_back(rank_row(table, k));
  return rows;
}

// Release-probability table Pr[y | x]. Holding an invalid table is allowed;
// validate_mechanism reports what is wrong with it.
class MechanismTable {
 public:
  MechanismTable(Matrix probs, PrivacyBudget epsilon, std::string name)
      : probs_(std::move(probs)), epsilon_(epsilon), name_(std::move(name)) {
    if (probs_.size() == 0) throw InvalidInput("mechanism table is empty");
  }

  std::size_t size() const { return probs_.size(); }
  const Matrix& probs() const { return probs_; }
  const PrivacyBudget& epsilon() const { return epsilon_; }
  const std::string& name() const { return name_; }
  // 1-based.
  double operator()(CandidateId x, CandidateId y) const { return probs_(x - 1, y - 1); }
  std::span<const double> row(CandidateId x) const { return probs_.row(x - 1); }

 private:
  Matrix probs_;
  PrivacyBudget epsilon_;
  std::string name_;
};

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kLdpRelativeSlack = 1e-9;

struct ValidationReport {
  double max_row_sum_deviation = 0.0;
  // max over (x, x', y) of Pr[y|x] / Pr[y|x']; +inf when some column mixes
  // zero and non-zero entries.
  double max_ldp_ratio = 1.0;
  CandidateId worst_x = 0;
  CandidateId worst_x_prime = 0;
  CandidateId worst_y = 0;
  bool entries_in_range = true;
  bool row_sums_ok = true;
  bool ldp_ok = true;

  bool ok() const { return entries_in_range && row_sums_ok && ldp_ok; }
};

// O(N^2): the worst ratio in a column is its max over its min.
inline ValidationReport validate_mechanism(const MechanismTable& m) {
  ValidationReport rep;
  const std::size_t n = m.size();
  const Matrix& p = m.probs();
  for (std::size_t x = 0; x < n; ++x) {
    double sum = 0.0;
    for (double v : p.row(x)) {
      if (!(v >= 0.0 && v <= 1.0)) rep.entries_in_range = false;
      sum += v;
    }
    rep.max_row_sum_deviation = std::max(rep.max_row_sum_deviation, std::abs(sum - 1.0));
  }
  rep.row_sums_ok = rep.max_row_sum_deviation <= kRowSumTolerance;

  for (std::size_t y = 0; y < n; ++y) {
    std::size_t hi = 0, lo = 0;
    for (std::size_t x = 1; x < n; ++x) {
      if (p(x, y) > p(hi, y)) hi = x;
      if (p(x, y) < p(lo, y)) lo = x;
    }
    const double num = p(hi, y);
    const double den = p(lo, y);
    double ratio;
    if (num == 0.0) {
      ratio = 1.0;
    } else if (den <= 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    } else {
      ratio = num / den;
    }
    if (ratio > rep.max_ldp_ratio || rep.worst_y == 0) {
      rep.max_ldp_ratio = ratio;
      rep.worst_x = hi + 1;
      rep.worst_x_prime = lo + 1;
      rep.worst_y = y + 1;
    }
  }
  rep.ldp_ok = rep.max_ldp_ratio <= m.epsilon().exp_eps() * (1.0 + kLdpRelativeSlack);
  return rep;
}

}  // namespace brr
