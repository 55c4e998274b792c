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

// Batch experiments behind the `brr` command line tool: grid sweeps, the
// BRR/GRR ratio convergence table, invariant checks, streaming
// perturbation and plot-script emission. Everything here is a
// deterministic function of its inputs and seed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "brr/adapters.hpp"
#include "brr/closed_form.hpp"
#include "brr/core.hpp"
#include "brr/mechanisms.hpp"
#include "brr/metrics.hpp"
#include "brr/random.hpp"
#include "brr/search.hpp"
#include "brr/utility_io.hpp"

namespace brr {

// --- grid parsing -----------------------------------------------------------

// "a,b,c" and/or "start:stop:step" pieces, e.g. "20:100:20" or "0.5,1,2".
inline std::vector<double> parse_real_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece =
        trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (!piece.empty()) {
      const auto c1 = piece.find(':');
      if (c1 == std::string_view::npos) {
        const auto v = parse_decimal(piece);
        if (!v) throw InvalidInput("bad grid value '" + std::string(piece) + "'");
        out.push_back(*v);
      } else {
        const auto c2 = piece.find(':', c1 + 1);
        const auto lo = parse_decimal(piece.substr(0, c1));
        const auto hi = parse_decimal(piece.substr(c1 + 1, c2 == piece.npos ? piece.npos : c2 - c1 - 1));
        const auto step = c2 == piece.npos ? std::optional<double>(1.0) : parse_decimal(piece.substr(c2 + 1));
        if (!lo || !hi || !step || !(*step > 0.0)) {
          throw InvalidInput("bad grid range '" + std::string(piece) + "'");
        }
        const auto count = static_cast<std::size_t>(std::floor((*hi - *lo) / *step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count && *lo <= *hi; ++i) out.push_back(*lo + i * *step);
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<std::size_t> parse_size_grid(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_real_grid(text)) {
    if (v < 0.0 || v != std::floor(v)) {
      throw InvalidInput("grid value " + format_decimal(v) + " is not a non-negative integer");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// --- sweep ------------------------------------------------------------------

enum class UtilityKind { kEuclidean, kJaccard, kFile };

struct UtilitySource {
  UtilityKind kind = UtilityKind::kEuclidean;
  std::string path;
  Orientation orientation = Orientation::kLoss;

  // "euclidean", "jaccard" or "file:PATH".
  static UtilitySource parse(std::string_view text, Orientation file_orientation) {
    UtilitySource s;
    if (text == "euclidean") {
      s.kind = UtilityKind::kEuclidean;
      s.orientation = Orientation::kLoss;
    } else if (text == "jaccard") {
      s.kind = UtilityKind::kJaccard;
      s.orientation = Orientation::kUtility;
    } else if (text.starts_with("file:") && text.size() > 5) {
      s.kind = UtilityKind::kFile;
      s.path = std::string(text.substr(5));
      s.orientation = file_orientation;
    } else {
      throw InvalidInput("unknown utility '" + std::string(text) + "'");
    }
    return s;
  }
};

struct SweepConfig {
  std::vector<std::string> mechanisms{"grr", "brr", "exp"};
  std::vector<std::size_t> n_grid{20, 40, 60, 80, 100};
  std::vector<double> eps_grid{1, 2, 3, 4, 5};
  UtilitySource utility;
  std::size_t samples = 0;  // Monte Carlo draws per cell; 0 = exact only
  std::uint64_t seed = 0;

  void validate() const {
    if (mechanisms.empty()) throw InvalidInput("mechanism set is empty");
    for (const auto& m : mechanisms) {
      if (m != "grr" && m != "brr" && m != "exp") throw InvalidInput("unknown mechanism '" + m + "'");
    }
    if (utility.kind != UtilityKind::kFile && n_grid.empty()) throw InvalidInput("N grid is empty");
    if (eps_grid.empty()) throw InvalidInput("epsilon grid is empty");
    for (auto n : n_grid) {
      if (n < 2) throw InvalidInput("every N must be at least 2");
    }
    for (double e : eps_grid) {
      if (!(e >= 0.0)) throw InvalidInput("every epsilon must be non-negative");
    }
  }
};

struct SweepRow {
  std::string mechanism;
  std::size_t n = 0;
  double epsilon = 0.0;
  std::optional<std::size_t> m;
  double q_global = 0.0;
  std::optional<double> q_loss;
  std::optional<double> ratio_to_grr;
  std::optional<MonteCarloEstimate> monte_carlo;
};

// Unreadable or malformed input files, as opposed to bad arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline UtilityTable load_table(const UtilitySource& src, std::size_t n) {
  switch (src.kind) {
    case UtilityKind::kEuclidean:
      return euclidean_loss_table(n);
    case UtilityKind::kJaccard:
      return jaccard_utility_table(n);
    case UtilityKind::kFile:
      try {
        return read_utility_csv(src.path, src.orientation);
      } catch (const std::exception& e) {
        throw InputError(src.path + ": " + e.what());
      }
  }
  throw InvalidInput("unknown utility kind");
}

inline MechanismTable build_mechanism(const std::string& name, const UtilityTable& table,
                                      const PrivacyBudget& eps, std::size_t* m_out) {
  if (name == "grr") return grr(DiscreteDomain(table.size()), eps);
  if (name == "exp") return exponential(table, eps);
  auto g = general_brr(table, eps);
  *m_out = g.trace.global_m;
  return std::move(g.mechanism);
}

}  // namespace detail

// One row per (N, ε, mechanism) in that nesting order. Equidistant GRR/BRR
// cells use the O(N) row-sum path; everything else contracts full tables.
inline std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  std::optional<UtilityTable> file_table;
  std::vector<std::size_t> n_grid = config.n_grid;
  if (config.utility.kind == UtilityKind::kFile) {
    file_table = detail::load_table(config.utility, 0);
    n_grid = {file_table->size()};
  }
  const RandomSource master(config.seed);
  std::uint64_t cell = 0;
  for (std::size_t n : n_grid) {
    std::optional<UtilityTable> table = file_table;
    const bool euclid = config.utility.kind == UtilityKind::kEuclidean;
    const bool needs_table =
        !euclid || config.samples > 0 ||
        std::find(config.mechanisms.begin(), config.mechanisms.end(), "exp") != config.mechanisms.end();
    if (!table && needs_table) table = detail::load_table(config.utility, n);

    for (double e : config.eps_grid) {
      const PrivacyBudget eps(e);
      std::optional<std::size_t> euclid_m;
      auto grr_q = [&]() {
        if (euclid) return equidistant_global_error(n, eps, 1).q_global;
        return global_expected_error(*table, grr(DiscreteDomain(n), eps)).q_global;
      }();
      for (const auto& name : config.mechanisms) {
        SweepRow row;
        row.mechanism = name;
        row.n = n;
        row.epsilon = e;
        std::optional<MechanismTable> mech;
        if (euclid && name != "exp") {
          std::size_t m = 1;
          if (name == "brr") {
            if (!euclid_m) euclid_m = equidistant_split(n, eps);
            m = *euclid_m;
            row.m = m;
          }
          const auto rep = equidistant_global_error(n, eps, m);
          row.q_global = rep.q_global;
          row.q_loss = rep.q_loss;
          if (config.samples > 0) {
            mech = name == "brr" ? brr_equidistant(n, eps, m) : grr(DiscreteDomain(n), eps);
          }
        } else {
          std::size_t m = 0;
          mech = detail::build_mechanism(name, *table, eps, &m);
          if (name == "brr") row.m = m;
          const auto rep = global_expected_error(*table, *mech);
          row.q_global = rep.q_global;
          row.q_loss = rep.q_loss;
        }
        if (grr_q != 0.0) row.ratio_to_grr = row.q_global / grr_q;
        if (config.samples > 0) {
          auto rng = master.child(cell);
          row.monte_carlo = monte_carlo_q(*table, *mech, config.samples, rng);
        }
        ++cell;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"mechanism", "N",      "epsilon",     "m",
                                             "q_global",  "q_loss", "ratio_to_grr"};
  return cols;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const bool mc = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.monte_carlo.has_value(); });
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  if (mc) out << ",mc_q_global,mc_se";
  out << '\n';
  for (const auto& r : rows) {
    out << r.mechanism << ',' << r.n << ',' << format_decimal(r.epsilon) << ','
        << (r.m ? std::to_string(*r.m) : "") << ',' << format_decimal(r.q_global) << ','
        << (r.q_loss ? format_decimal(*r.q_loss) : "") << ','
        << (r.ratio_to_grr ? format_decimal(*r.ratio_to_grr) : "");
    if (mc) {
      out << ',' << format_decimal(r.monte_carlo->mean) << ','
          << format_decimal(r.monte_carlo->standard_error);
    }
    out << '\n';
  }
}

// --- ratio convergence ----------------------------------------------------------

struct RatioRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t m = 1;
  double q_brr = 0.0;
  double q_grr = 0.0;
  double ratio = 1.0;
  double asymptote = 1.0;
  double gap = 0.0;
};

inline RatioRow ratio_convergence_row(std::size_t n, const PrivacyBudget& eps) {
  RatioRow r;
  r.n = n;
  r.epsilon = eps.epsilon();
  r.m = equidistant_split(n, eps);
  r.q_brr = equidistant_global_error(n, eps, r.m).q_global;
  r.q_grr = equidistant_global_error(n, eps, 1).q_global;
  r.ratio = r.q_brr / r.q_grr;
  r.asymptote = global_ratio_limit(eps);
  r.gap = std::abs(r.ratio - r.asymptote);
  return r;
}

inline std::vector<RatioRow> run_ratio_convergence(const std::vector<double>& eps_list,
                                                   const std::vector<std::size_t>& n_list) {
  if (eps_list.empty() || n_list.empty()) throw InvalidInput("ratio grids must be non-empty");
  std::vector<RatioRow> rows;
  for (double e : eps_list) {
    const PrivacyBudget eps(e);
    for (std::size_t n : n_list) {
      if (n < 2) throw InvalidInput("every N must be at least 2");
      rows.push_back(ratio_convergence_row(n, eps));
    }
  }
  return rows;
}

inline const std::vector<std::string>& ratio_columns() {
  static const std::vector<std::string> cols{"N",     "epsilon", "m",         "q_brr",
                                             "q_grr", "ratio",   "asymptote", "gap"};
  return cols;
}

inline void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows) {
  const auto& cols = ratio_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_decimal(r.epsilon) << ',' << r.m << ',' << format_decimal(r.q_brr)
        << ',' << format_decimal(r.q_grr) << ',' << format_decimal(r.ratio) << ','
        << format_decimal(r.asymptote) << ',' << format_decimal(r.gap) << '\n';
  }
}

// --- invariant check ----------------------------------------------------------------

// Random symmetric loss table with zero diagonal and off-diagonal entries
// uniform on (0, 1].
inline UtilityTable random_symmetric_loss_table(std::size_t n, RandomSource& rng) {
  Matrix v(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = 1.0 - rng.uniform();
      v(i, j) = x;
      v(j, i) = x;
    }
  }
  return UtilityTable(std::move(v), Orientation::kLoss);
}

struct CheckConfig {
  std::size_t n_min = 3;
  std::size_t n_max = 300;
  std::vector<double> eps_list{0.5, 1, 2, 3, 5};
  std::size_t fuzz_tables = 50;
  std::uint64_t seed = 0;
};

struct CheckFailure {
  std::string check;
  std::string detail;
};

struct CheckReport {
  std::size_t grid_points = 0;
  std::size_t formula_mismatches = 0;
  std::size_t exact_root_cases = 0;       // mismatches explained by z = 0
  std::size_t literal_formula_mismatches = 0;  // uncorrected formula, informational
  std::size_t tables_validated = 0;
  double worst_ldp_margin = 0.0;  // max over tables of ratio / e^ε
  std::size_t dominance_cases = 0;
  std::size_t symmetry_cases = 0;
  std::size_t fuzz_tables = 0;
  std::vector<CheckFailure> failures;

  bool passed() const { return failures.empty(); }
};

namespace detail {

inline void record_validation(CheckReport& rep, const MechanismTable& mech, const std::string& where) {
  const auto v = validate_mechanism(mech);
  ++rep.tables_validated;
  rep.worst_ldp_margin = std::max(rep.worst_ldp_margin, v.max_ldp_ratio / mech.epsilon().exp_eps());
  if (!v.ok()) {
    rep.failures.push_back({"ldp", where + ": " + mech.name() + " max ratio " +
                                       format_decimal(v.max_ldp_ratio) + ", row deviation " +
                                       format_decimal(v.max_row_sum_deviation)});
  }
}

}  // namespace detail

// Formula/search equivalence, LDP validity, per-priori dominance of BRR
// over GRR and mirror symmetry on the equidistant grid, plus fuzzed
// symmetric loss tables.
inline CheckReport run_check(const CheckConfig& config) {
  if (config.eps_list.empty() || config.n_min > config.n_max) {
    throw InvalidInput("check grid is empty");
  }
  if (config.n_min < 2) throw InvalidInput("check grid needs N >= 2");
  CheckReport rep;
  for (double e : config.eps_list) {
    const PrivacyBudget eps(e);
    for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
      const std::string where = "N=" + std::to_string(n) + " eps=" + format_decimal(e);
      const auto table = euclidean_loss_table(n);
      const auto rows = rank_rows(table);
      const auto trace = global_search_ranked(rows, eps);
      ++rep.grid_points;

      if (e > 0.0) {
        const auto cf = closed_form_m(n, eps);
        if (cf.literal_m != trace.global_m) ++rep.literal_formula_mismatches;
        if (cf.m != trace.global_m) {
          ++rep.formula_mismatches;
          if (cf.exact_root_hit) {
            ++rep.exact_root_cases;
          } else {
            rep.failures.push_back({"formula", where + ": closed form " + std::to_string(cf.m) +
                                                   " vs search " + std::to_string(trace.global_m)});
          }
        }
      }

      const auto g = grr(DiscreteDomain(n), eps);
      const auto b = brr_from_ranked(rows, eps, trace.global_m);
      detail::record_validation(rep, g, where);
      detail::record_validation(rep, b, where);
      detail::record_validation(rep, exponential(table, eps), where);

      const auto qb = global_expected_error(table, b);
      const auto qg = global_expected_error(table, g);
      ++rep.dominance_cases;
      for (std::size_t k = 0; k < n; ++k) {
        if (qb.per_priori_q[k] > qg.per_priori_q[k] * (1.0 + 1e-12)) {
          rep.failures.push_back({"dominance", where + " k=" + std::to_string(k + 1)});
          break;
        }
      }
      if (trace.global_m > 1 && e > 0.0 && !(qb.q_global < qg.q_global)) {
        rep.failures.push_back({"dominance", where + ": global error not strictly lower"});
      }
      ++rep.symmetry_cases;
      for (std::size_t k = 0; k < n; ++k) {
        const bool m_sym = trace.per_priori_m[k] == trace.per_priori_m[n - 1 - k];
        const bool q_sym = std::abs(qb.per_priori_q[k] - qb.per_priori_q[n - 1 - k]) <=
                           1e-12 * std::max(1.0, qb.per_priori_q[k]);
        if (!m_sym || !q_sym) {
          rep.failures.push_back({"symmetry", where + " k=" + std::to_string(k + 1)});
          break;
        }
      }
    }
  }

  RandomSource master(config.seed);
  for (std::size_t t = 0; t < config.fuzz_tables; ++t) {
    auto rng = master.child(t);
    const std::size_t n = 3 + rng.below(48);
    const PrivacyBudget eps(0.1 + 4.9 * rng.uniform());
    const auto table = random_symmetric_loss_table(n, rng);
    const std::string where = "fuzz#" + std::to_string(t) + " N=" + std::to_string(n);
    const auto gb = general_brr(table, eps);
    const auto g = grr(DiscreteDomain(n), eps);
    detail::record_validation(rep, gb.mechanism, where);
    detail::record_validation(rep, g, where);
    detail::record_validation(rep, exponential(table, eps), where);
    const auto qb = global_expected_error(table, gb.mechanism);
    const auto qg = global_expected_error(table, g);
    for (std::size_t k = 0; k < n; ++k) {
      if (qb.per_priori_q[k] > qg.per_priori_q[k] * (1.0 + 1e-12)) {
        rep.failures.push_back({"dominance", where + " k=" + std::to_string(k + 1)});
        break;
      }
    }
    ++rep.fuzz_tables;
  }
  return rep;
}

// --- streaming perturbation ---------------------------------------------------

struct PerturbResult {
  std::size_t lines = 0;
  std::optional<std::size_t> bad_line;  // 1-based line that failed to parse
};

// One released grid value per input line. Blank lines are rejected like any
// other unparseable line.
inline PerturbResult run_perturb(const ContinuousBrr& mech, std::uint64_t seed, std::istream& in,
                                 std::ostream& out) {
  PerturbResult res;
  RandomSource rng(seed);
  std::string line;
  while (std::getline(in, line)) {
    const auto v = parse_decimal(line);
    if (!v || !std::isfinite(*v)) {
      res.bad_line = res.lines + 1;
      return res;
    }
    ++res.lines;
    out << format_decimal(mech.perturb(*v, rng)) << '\n';
  }
  return res;
}

// --- plot scripts ----------------------------------------------------------------

enum class CsvSchema { kSweep, kRatio };

class SchemaError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

inline std::vector<std::string> split_header(std::string_view line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cols.emplace_back(trim(line.substr(start, comma == line.npos ? line.npos : comma - start)));
    if (comma == line.npos) break;
    start = comma + 1;
  }
  return cols;
}

// Sweep CSVs are recognized by their mechanism column, ratio CSVs by
// their asymptote column; the rest of the schema must then be present.
inline CsvSchema detect_schema(std::string_view header_line) {
  const auto cols = split_header(trim(header_line));
  const std::set<std::string> have(cols.begin(), cols.end());
  const auto check = [&](const std::vector<std::string>& want, CsvSchema s) {
    std::string missing;
    for (const auto& c : want) {
      if (!have.count(c)) missing += (missing.empty() ? "" : ", ") + c;
    }
    if (!missing.empty()) throw SchemaError("CSV is missing column(s): " + missing);
    return s;
  };
  if (have.count("mechanism")) return check(sweep_columns(), CsvSchema::kSweep);
  if (have.count("asymptote")) return check(ratio_columns(), CsvSchema::kRatio);
  throw SchemaError("CSV header matches neither the sweep nor the ratio schema");
}

inline std::string plot_script(CsvSchema schema, const std::string& csv_path) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
       "# Generated by `brr plot`. Requires matplotlib.\n"
       "import csv\n"
       "import sys\n"
       "from collections import defaultdict\n\n"
       "import matplotlib\n"
       "matplotlib.use(\"Agg\")\n"
       "import matplotlib.pyplot as plt\n\n"
       "CSV_PATH = sys.argv[1] if len(sys.argv) > 1 else "
    << "\"" << csv_path << "\"\n"
    << "OUT_PATH = sys.argv[2] if len(sys.argv) > 2 else CSV_PATH.rsplit(\".\", 1)[0] + \".png\"\n\n"
       "with open(CSV_PATH, newline=\"\") as f:\n"
       "    rows = list(csv.DictReader(f))\n\n";
  if (schema == CsvSchema::kSweep) {
    s << "# One panel per N: QLoss (or global error) against epsilon, one line per mechanism.\n"
         "panels = defaultdict(lambda: defaultdict(list))\n"
         "for r in rows:\n"
         "    y = r[\"q_loss\"] or r[\"q_global\"]\n"
         "    panels[int(r[\"N\"])][r[\"mechanism\"]].append((float(r[\"epsilon\"]), float(y)))\n"
         "ns = sorted(panels)\n"
         "fig, axes = plt.subplots(1, len(ns), figsize=(4 * len(ns), 3.5), squeeze=False)\n"
         "for ax, n in zip(axes[0], ns):\n"
         "    for mech, pts in sorted(panels[n].items()):\n"
         "        pts.sort()\n"
         "        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=\"o\", label=mech)\n"
         "    ax.set_title(f\"N = {n}\")\n"
         "    ax.set_xlabel(\"epsilon\")\n"
         "    ax.set_ylabel(\"QLoss\")\n"
         "    ax.legend()\n";
  } else {
    s << "# Computed BRR/GRR global error ratio against N with its large-N asymptote.\n"
         "series = defaultdict(list)\n"
         "for r in rows:\n"
         "    series[float(r[\"epsilon\"])].append((int(r[\"N\"]), float(r[\"ratio\"]), float(r[\"asymptote\"])))\n"
         "fig, ax = plt.subplots(figsize=(6, 4))\n"
         "for eps, pts in sorted(series.items()):\n"
         "    pts.sort()\n"
         "    line, = ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=\"o\", label=f\"eps={eps:g}\")\n"
         "    ax.axhline(pts[0][2], linestyle=\"--\", color=line.get_color(), label=f\"asym. eps={eps:g}\")\n"
         "ax.set_xscale(\"log\")\n"
         "ax.set_xlabel(\"N\")\n"
         "ax.set_ylabel(\"Q_g(BRR) / Q_g(GRR)\")\n"
         "ax.legend()\n";
  }
  s << "fig.tight_layout()\n"
       "fig.savefig(OUT_PATH, dpi=150)\n"
       "print(OUT_PATH)\n";
  return s.str();
}

// Reads only the header line of the CSV.
inline std::string plot_script_for(std::istream& csv, const std::string& csv_path) {
  std::string header;
  if (!std::getline(csv, header)) throw SchemaError("CSV is empty");
  return plot_script(detect_schema(header), csv_path);
}

// --- key=value config files ------------------------------------------------------

// Lines "key = value"; '#' starts a comment. Returns keys in file order.
inline std::vector<std::pair<std::string, std::string>> parse_key_value_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != body.npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == body.npos) throw ParseError(lineno, "expected key=value");
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "empty key");
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

}  // namespace brr
