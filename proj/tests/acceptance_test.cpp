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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "brr/brr.hpp"
#include "brr/experiments.hpp"
#include "oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Gate {
  int failed = 0;
  void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Shared LDP tally for AC4.
struct LdpTally {
  std::size_t tables = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // max ratio / e^ε
  void add(const brr::MechanismTable& m) {
    const auto v = brr::validate_mechanism(m);
    ++tables;
    failures += !v.ok();
    worst_margin = std::max(worst_margin, v.max_ldp_ratio / m.epsilon().exp_eps());
  }
};

// Per-priori and strict global dominance on the line, fast path.
struct DominanceTally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  void add(std::size_t n, const brr::PrivacyBudget& eps, std::size_t m) {
    ++cases;
    const auto b = brr::equidistant_global_error(n, eps, m);
    const auto g = brr::equidistant_global_error(n, eps, 1);
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) ok &= b.per_priori_q[k] <= g.per_priori_q[k] * (1.0 + 1e-12);
    if (m > 1) ok &= b.q_global < g.q_global;
    failures += !ok;
  }
};

}  // namespace

int main() {
  Gate gate;
  LdpTally ldp;
  DominanceTally dom;

  // AC1: global ratio at N = 5001 against its limit.
  {
    bool ok = true;
    std::string detail;
    double slowest = 0.0;
    for (double e : {0.5, 1.0, 2.0, 3.0}) {
      const brr::PrivacyBudget eps(e);
      const auto t0 = Clock::now();
      const auto row = brr::ratio_convergence_row(5001, eps);
      slowest = std::max(slowest, seconds_since(t0));
      const double rel = std::abs(row.ratio - row.asymptote) / row.asymptote;
      ok &= rel < 0.01;
      detail += fmt("eps=%g", e) + fmt(" ratio=%.5f", row.ratio) + fmt(" limit=%.5f", row.asymptote) +
                fmt(" rel=%.2e; ", rel);
      dom.add(5001, eps, row.m);
      ldp.add(brr::grr(brr::DiscreteDomain(5001), eps));
      ldp.add(brr::brr_equidistant(5001, eps, row.m));
    }
    ok &= slowest < 10.0;
    gate.report("AC1", ok, detail + fmt("slowest %.3fs", slowest));
  }

  // AC2: split ratio at N = 1e5.
  {
    bool ok = true;
    std::string detail;
    const auto t0 = Clock::now();
    for (double e : {0.5, 1.0, 2.0}) {
      const brr::PrivacyBudget eps(e);
      const std::size_t n = 100000;
      const auto cf = brr::closed_form_m(n, eps);
      const double dev = std::abs(static_cast<double>(cf.m) / n - brr::m_over_n_limit(eps));
      ok &= dev < 1e-3;
      detail += fmt("eps=%g", e) + " m=" + std::to_string(cf.m) + fmt(" dev=%.2e; ", dev);
      // Too large to materialize; check the two quantities the validator
      // would bound, using the parameters the table would be built from.
      const auto p = brr::BrrParams::make(n, eps, cf.m);
      const double row_sum = cf.m * p.p_star + (n - cf.m) * p.q_star;
      ldp.tables += 1;
      const bool good = p.p_star / p.q_star <= eps.exp_eps() * (1.0 + brr::kLdpRelativeSlack) &&
                        std::abs(row_sum - 1.0) <= brr::kRowSumTolerance;
      ldp.failures += !good;
      ldp.worst_margin = std::max(ldp.worst_margin, p.p_star / p.q_star / eps.exp_eps());
    }
    const double secs = seconds_since(t0);
    ok &= secs < 1.0;
    gate.report("AC2", ok, detail + fmt("%.4fs", secs));
  }

  // AC3: closed form against search.
  {
    const auto t0 = Clock::now();
    std::size_t points = 0, mismatches = 0, unexplained = 0, literal = 0;
    for (double e : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0}) {
      const brr::PrivacyBudget eps(e);
      for (std::size_t n = 3; n <= 300; ++n) {
        const auto table = brr::euclidean_loss_table(n);
        const auto rows = brr::rank_rows(table);
        const auto trace = brr::global_search_ranked(rows, eps);
        const auto cf = brr::closed_form_m(n, eps);
        ++points;
        if (cf.m != trace.global_m) {
          ++mismatches;
          if (!cf.exact_root_hit) ++unexplained;
        }
        literal += cf.literal_m != trace.global_m;
        ldp.add(brr::grr(brr::DiscreteDomain(n), eps));
        ldp.add(brr::brr_from_ranked(rows, eps, trace.global_m));
        dom.add(n, eps, trace.global_m);
      }
    }
    const double secs = seconds_since(t0);
    gate.report("AC3", unexplained == 0 && secs < 60.0,
                std::to_string(points) + " grid points, " + std::to_string(mismatches) + " mismatches (" +
                    std::to_string(unexplained) + " not at an exact root); uncorrected formula differs at " +
                    std::to_string(literal) + fmt(" points; %.2fs", secs));
  }

  // AC4: LDP over everything above plus 50 fuzzed tables.
  {
    const brr::RandomSource master(20260101);
    for (std::uint64_t t = 0; t < 50; ++t) {
      auto rng = master.child(t);
      const std::size_t n = 3 + rng.below(48);
      const brr::PrivacyBudget eps(0.1 + 4.9 * rng.uniform());
      const auto table = brr::random_symmetric_loss_table(n, rng);
      ldp.add(brr::general_brr(table, eps).mechanism);
      ldp.add(brr::grr(brr::DiscreteDomain(n), eps));
      ldp.add(brr::exponential(table, eps));
    }
    gate.report("AC4", ldp.failures == 0,
                std::to_string(ldp.tables) + " tables, " + std::to_string(ldp.failures) + " failures" +
                    fmt(", worst ratio/e^eps %.12f", ldp.worst_margin));
  }

  // AC5: dominance on the line and the utility-orientation ordering.
  {
    std::size_t jaccard = 0, jaccard_bad = 0;
    for (std::size_t n : {20, 40, 60, 80, 100}) {
      const auto table = brr::jaccard_utility_table(n);
      for (double e : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        const brr::PrivacyBudget eps(e);
        const double qb = brr::global_expected_error(table, brr::general_brr(table, eps).mechanism).q_global;
        const double qg = brr::global_expected_error(table, brr::grr(brr::DiscreteDomain(n), eps)).q_global;
        ++jaccard;
        jaccard_bad += !(qb >= qg);
      }
    }
    gate.report("AC5", dom.failures == 0 && jaccard_bad == 0,
                std::to_string(dom.cases) + " line cases, " + std::to_string(dom.failures) + " failures; " +
                    std::to_string(jaccard) + " Jaccard cases, " + std::to_string(jaccard_bad) + " failures");
  }

  // AC6: local ratio bounds at N = 20001, eps = 1.
  {
    const std::size_t n = 20001;
    const brr::PrivacyBudget eps(1.0);
    const std::size_t m = brr::closed_form_m(n, eps).m;
    const auto b = brr::equidistant_global_error(n, eps, m);
    const auto g = brr::equidistant_global_error(n, eps, 1);
    const auto lim = brr::local_ratio_bounds(eps);
    double lo = 1e300, hi = -1e300;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = b.per_priori_q[k] / g.per_priori_q[k];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    const double extreme = b.per_priori_q[0] / g.per_priori_q[0];
    const bool ok = std::abs(extreme - lim.sup_limit) / lim.sup_limit < 0.01 &&
                    std::abs(lo - lim.inf_limit) / lim.inf_limit < 0.02 && lo >= lim.inf_limit - 0.02 &&
                    hi <= lim.sup_limit + 0.02;
    gate.report("AC6", ok,
                fmt("extreme=%.5f", extreme) + fmt(" sup=%.5f", lim.sup_limit) + fmt(" min=%.5f", lo) +
                    fmt(" inf=%.5f", lim.inf_limit) + fmt(" max=%.5f", hi));
  }

  // AC7: QLoss trend at eps = 2.
  {
    const brr::PrivacyBudget eps(2.0);
    std::vector<double> qg, qb;
    std::string detail;
    for (std::size_t n : {20, 40, 60, 80, 100}) {
      const auto table = brr::euclidean_loss_table(n);
      const auto gb = brr::general_brr(table, eps);
      qb.push_back(*brr::global_expected_error(table, gb.mechanism).q_loss);
      qg.push_back(*brr::global_expected_error(table, brr::grr(brr::DiscreteDomain(n), eps)).q_loss);
      detail += "N=" + std::to_string(n) + " m=" + std::to_string(gb.trace.global_m) +
                fmt(" grr=%.4f", qg.back()) + fmt(" brr=%.4f; ", qb.back());
    }
    bool ok = true;
    for (std::size_t i = 0; i < qg.size(); ++i) {
      if (i) ok &= qg[i] > qg[i - 1];
      ok &= qb[i] <= qg[i];
    }
    const auto [mn, mx] = std::minmax_element(qb.begin(), qb.end());
    const double spread = (*mx - *mn) / *mn;
    ok &= spread < 0.25;
    gate.report("AC7", ok, detail + fmt("brr spread %.2f%%", 100.0 * spread));
  }

  // AC8: sampling frequencies, every row of GRR and BRR at N = 20, eps = 1.
  {
    const std::size_t n = 20, draws = 1000000;
    const brr::PrivacyBudget eps(1.0);
    const auto m = brr::closed_form_m(n, eps).m;
    double worst = 0.0;
    std::uint64_t stream = 0;
    const brr::RandomSource master(8);
    for (const auto& mech : {brr::grr(brr::DiscreteDomain(n), eps), brr::brr_equidistant(n, eps, m)}) {
      for (brr::CandidateId x = 1; x <= n; ++x) {
        auto rng = master.child(stream++);
        std::vector<std::size_t> hits(n, 0);
        for (std::size_t i = 0; i < draws; ++i) ++hits[brr::sample(mech, x, rng) - 1];
        for (std::size_t y = 0; y < n; ++y) {
          worst = std::max(worst, std::abs(static_cast<double>(hits[y]) / draws - mech(x, y + 1)));
        }
      }
    }
    gate.report("AC8", worst <= 0.003, fmt("max L_inf over 40 rows x 1e6 draws = %.5f", worst));
  }

  // AC9: local search against exhaustive argmin.
  {
    std::size_t rows = 0, bad = 0;
    for (double e : {0.1, 0.5, 1.0, 2.0}) {
      const brr::PrivacyBudget eps(e);
      for (std::size_t n = 3; n <= 60; ++n) {
        for (const auto& row : brr::rank_rows(brr::euclidean_loss_table(n))) {
          const auto lam = brr::oracle::sorted_distances(n, row.priori);
          ++rows;
          bad += brr::local_search(row, eps).m !=
                 brr::oracle::exhaustive_best_split(lam, std::exp(static_cast<long double>(e)));
        }
      }
    }
    gate.report("AC9", bad == 0, std::to_string(rows) + " rows, " + std::to_string(bad) + " disagreements");
  }

  std::printf("%d criteria failed\n", gate.failed);
  return gate.failed == 0 ? 0 : 1;
}
