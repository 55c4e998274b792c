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

// brr: experiment runner for bipartite randomized response.
//
// Exit codes: 0 success, 1 usage error, 2 input/IO error, 3 invariant
// violation (check only).

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "brr/brr.hpp"
#include "brr/experiments.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;

// Writes to stdout for "-" or an empty path.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return std::cout ? kExitOk : kExitInput;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "brr: cannot write " << path << "\n";
    return kExitInput;
  }
  body(out);
  out.close();
  if (!out) {
    std::cerr << "brr: write failed for " << path << "\n";
    return kExitInput;
  }
  return kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& c : brr::split_header(text)) {
    if (!c.empty()) out.push_back(c);
  }
  return out;
}

brr::Orientation parse_orientation(const std::string& s) {
  if (s == "loss") return brr::Orientation::kLoss;
  if (s == "utility") return brr::Orientation::kUtility;
  throw brr::InvalidInput("orientation must be loss or utility");
}

// Splices `--config FILE` entries in front of the remaining flags so that
// explicit flags (parsed later, last one wins) override the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw brr::InputError("cannot open config " + path);
    try {
      for (auto& [k, v] : brr::parse_key_value_config(in)) {
        from_file.push_back("--" + k);
        from_file.push_back(v);
      }
    } catch (const brr::ParseError& e) {
      throw brr::InputError(path + ": " + e.what());
    }
  }
  // Keep the subcommand name first.
  if (!from_file.empty() && !out.empty()) {
    out.insert(out.begin() + 1, from_file.begin(), from_file.end());
  }
  return out;
}

nlohmann::json to_json(const brr::CheckReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back({{"check", f.check}, {"detail", f.detail}});
  return {
      {"passed", r.passed()},
      {"grid_points", r.grid_points},
      {"formula_mismatches", r.formula_mismatches},
      {"exact_root_cases", r.exact_root_cases},
      {"literal_formula_mismatches", r.literal_formula_mismatches},
      {"tables_validated", r.tables_validated},
      {"worst_ldp_margin", r.worst_ldp_margin},
      {"dominance_cases", r.dominance_cases},
      {"symmetry_cases", r.symmetry_cases},
      {"fuzz_tables", r.fuzz_tables},
      {"failures", failures},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite randomized response: sweeps, checks and perturbation"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // sweep
  std::string mechanisms = "grr,brr,exp", n_grid = "20:100:20", eps_grid = "1:5:1";
  std::string utility = "euclidean", orientation = "loss", out_path = "-";
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  auto* sweep = app.add_subcommand("sweep", "Expected-error table over a (mechanism, N, epsilon) grid");
  sweep->add_option("--mechanisms", mechanisms, "Comma list of grr, brr, exp")->capture_default_str();
  sweep->add_option("--n-grid", n_grid, "N values: list and/or start:stop:step")->capture_default_str();
  sweep->add_option("--eps-grid", eps_grid, "Epsilon values: list and/or start:stop:step")->capture_default_str();
  sweep->add_option("--utility", utility, "euclidean | jaccard | file:PATH")->capture_default_str();
  sweep->add_option("--orientation", orientation, "loss | utility (for file tables)")->capture_default_str();
  sweep->add_option("--samples", samples, "Monte Carlo draws per cell (0 = exact only)")->capture_default_str();
  sweep->add_option("--seed", seed, "Master seed")->capture_default_str();
  sweep->add_option("--out", out_path, "Output CSV ('-' = stdout)")->capture_default_str();

  // ratio
  std::string ratio_eps = "0.5,1,2,3", ratio_n = "101,501,1001,5001", ratio_out = "-";
  auto* ratio = app.add_subcommand("ratio", "Q_g(BRR)/Q_g(GRR) on the equidistant line against its limit");
  ratio->add_option("--eps-grid", ratio_eps)->capture_default_str();
  ratio->add_option("--n-grid", ratio_n)->capture_default_str();
  ratio->add_option("--out", ratio_out)->capture_default_str();

  // check
  std::string n_range = "3:300", check_eps = "0.5,1,2,3,5", check_out = "-";
  std::size_t fuzz = 50;
  std::uint64_t check_seed = 0;
  auto* check = app.add_subcommand("check", "Run the invariant suites; exit 3 on any violation");
  check->add_option("--n-range", n_range, "lo:hi inclusive")->capture_default_str();
  check->add_option("--eps-grid", check_eps)->capture_default_str();
  check->add_option("--fuzz", fuzz, "Number of random loss tables")->capture_default_str();
  check->add_option("--seed", check_seed)->capture_default_str();
  check->add_option("--out", check_out, "JSON report ('-' = stdout)")->capture_default_str();

  // perturb
  std::string interval;
  std::size_t grid_n = 0;
  double perturb_eps = 1.0;
  std::uint64_t perturb_seed = 0;
  auto* perturb = app.add_subcommand("perturb", "Release one grid value per stdin line");
  perturb->add_option("--n", grid_n, "Grid points")->required();
  perturb->add_option("--eps", perturb_eps, "Privacy budget")->capture_default_str();
  perturb->add_option("--interval", interval, "a,b (default 1,N: integer labels)");
  perturb->add_option("--seed", perturb_seed)->capture_default_str();

  // plot
  std::string plot_csv, plot_out = "-";
  auto* plot = app.add_subcommand("plot", "Emit a matplotlib script for a sweep or ratio CSV");
  plot->add_option("csv", plot_csv, "Input CSV")->required();
  plot->add_option("--out", plot_out, "Script path ('-' = stdout)")->capture_default_str();

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    std::vector<std::string> forward(args.rbegin(), args.rend());
    forward = expand_config(std::move(forward));
    args.assign(forward.rbegin(), forward.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const brr::InputError& e) {
    std::cerr << "brr: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*sweep) {
      brr::SweepConfig cfg;
      cfg.mechanisms = split_list(mechanisms);
      cfg.n_grid = brr::parse_size_grid(n_grid);
      cfg.eps_grid = brr::parse_real_grid(eps_grid);
      cfg.utility = brr::UtilitySource::parse(utility, parse_orientation(orientation));
      cfg.samples = samples;
      cfg.seed = seed;
      const auto rows = brr::run_sweep(cfg);
      return with_output(out_path, [&](std::ostream& os) { brr::write_sweep_csv(os, rows); });
    }
    if (*ratio) {
      const auto rows =
          brr::run_ratio_convergence(brr::parse_real_grid(ratio_eps), brr::parse_size_grid(ratio_n));
      return with_output(ratio_out, [&](std::ostream& os) { brr::write_ratio_csv(os, rows); });
    }
    if (*check) {
      brr::CheckConfig cfg;
      const auto bounds = brr::parse_size_grid(n_range);
      if (bounds.empty()) throw brr::InvalidInput("empty N range");
      cfg.n_min = bounds.front();
      cfg.n_max = bounds.back();
      cfg.eps_list = brr::parse_real_grid(check_eps);
      cfg.fuzz_tables = fuzz;
      cfg.seed = check_seed;
      const auto rep = brr::run_check(cfg);
      const int io = with_output(check_out, [&](std::ostream& os) { os << to_json(rep).dump(2) << "\n"; });
      if (io != kExitOk) return io;
      return rep.passed() ? kExitOk : kExitViolation;
    }
    if (*perturb) {
      std::optional<brr::IntervalSpec> spec;
      if (interval.empty()) {
        spec.emplace(1.0, static_cast<double>(grid_n), grid_n);
      } else {
        const auto ab = brr::parse_real_grid(interval);
        if (ab.size() != 2) throw brr::InvalidInput("--interval expects a,b");
        spec.emplace(ab[0], ab[1], grid_n);
      }
      const brr::ContinuousBrr mech(*spec, brr::PrivacyBudget(perturb_eps));
      const auto res = brr::run_perturb(mech, perturb_seed, std::cin, std::cout);
      std::cout.flush();
      if (res.bad_line) {
        std::cerr << "brr: line " << *res.bad_line << ": not a decimal value\n";
        return kExitInput;
      }
      return kExitOk;
    }
    if (*plot) {
      std::ifstream in(plot_csv);
      if (!in) {
        std::cerr << "brr: cannot open " << plot_csv << "\n";
        return kExitInput;
      }
      const auto script = brr::plot_script_for(in, plot_csv);
      return with_output(plot_out, [&](std::ostream& os) { os << script; });
    }
  } catch (const brr::InputError& e) {
    std::cerr << "brr: " << e.what() << "\n";
    return kExitInput;
  } catch (const brr::SchemaError& e) {
    std::cerr << "brr: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::system_error& e) {
    std::cerr << "brr: " << e.what() << "\n";
    return kExitInput;
  } catch (const brr::InvalidInput& e) {
    std::cerr << "brr: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "brr: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
