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

#include "brr/experiments.hpp"

#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace brr {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(GridTest, ListsAndRanges) {
  EXPECT_THAT(parse_real_grid("0.5, 1,2"), ElementsAre(0.5, 1.0, 2.0));
  EXPECT_THAT(parse_size_grid("20:100:20"), ElementsAre(20, 40, 60, 80, 100));
  EXPECT_THAT(parse_size_grid("3:5"), ElementsAre(3, 4, 5));
  EXPECT_THAT(parse_real_grid("0:1:0.25"), ElementsAre(0.0, 0.25, 0.5, 0.75, 1.0));
  EXPECT_TRUE(parse_real_grid("").empty());
  EXPECT_THROW(parse_real_grid("1:x"), InvalidInput);
  EXPECT_THROW(parse_size_grid("2.5"), InvalidInput);
}

TEST(SweepTest, DefaultGridHasSeventyFiveRows) {
  const auto rows = run_sweep(SweepConfig{});
  ASSERT_EQ(rows.size(), 75u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.m.has_value(), r.mechanism == "brr");
    ASSERT_TRUE(r.q_loss.has_value());
    if (r.mechanism == "brr") EXPECT_LE(*r.ratio_to_grr, 1.0);
    if (r.mechanism == "grr") EXPECT_DOUBLE_EQ(*r.ratio_to_grr, 1.0);
  }
}

TEST(SweepTest, CsvIsDeterministic) {
  SweepConfig cfg;
  cfg.n_grid = {10, 15};
  cfg.eps_grid = {0.5, 2.0};
  cfg.samples = 500;
  cfg.seed = 9;
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep(cfg));
  write_sweep_csv(b, run_sweep(cfg));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_THAT(a.str(), HasSubstr("mechanism,N,epsilon,m,q_global,q_loss,ratio_to_grr,mc_q_global,mc_se\n"));
}

TEST(SweepTest, EmptyMCellForNonBrr) {
  SweepConfig cfg;
  cfg.n_grid = {5};
  cfg.eps_grid = {1.0};
  cfg.mechanisms = {"grr"};
  std::ostringstream s;
  write_sweep_csv(s, run_sweep(cfg));
  EXPECT_THAT(s.str(), HasSubstr("\ngrr,5,1,,"));
}

TEST(SweepTest, JaccardHasNoQLoss) {
  SweepConfig cfg;
  cfg.n_grid = {8};
  cfg.eps_grid = {1.0};
  cfg.utility = UtilitySource::parse("jaccard", Orientation::kUtility);
  for (const auto& r : run_sweep(cfg)) EXPECT_FALSE(r.q_loss.has_value());
}

TEST(SweepTest, RejectsBadConfig) {
  SweepConfig cfg;
  cfg.mechanisms = {"laplace"};
  EXPECT_THROW(run_sweep(cfg), InvalidInput);
  cfg = SweepConfig{};
  cfg.eps_grid.clear();
  EXPECT_THROW(run_sweep(cfg), InvalidInput);
  cfg = SweepConfig{};
  cfg.utility = UtilitySource::parse("file:/nonexistent/table.csv", Orientation::kLoss);
  EXPECT_THROW(run_sweep(cfg), InputError);
}

TEST(RatioTest, ZeroBudgetIsOneAndGapShrinks) {
  const auto zero = run_ratio_convergence({0.0}, {11, 101});
  for (const auto& r : zero) EXPECT_DOUBLE_EQ(r.ratio, 1.0);
  for (double e : {1.0, 2.0}) {
    const auto rows = run_ratio_convergence({e}, {101, 501, 1001, 5001});
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].gap, rows[i - 1].gap) << "eps=" << e;
  }
}

TEST(RatioTest, FiveThousandAtTwo) {
  const auto r = ratio_convergence_row(5001, PrivacyBudget(2.0));
  EXPECT_NEAR(r.ratio, 0.5068, 0.005);
}

TEST(CheckTest, SmallGridPasses) {
  CheckConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 40;
  cfg.fuzz_tables = 10;
  const auto rep = run_check(cfg);
  EXPECT_TRUE(rep.passed()) << (rep.failures.empty() ? "" : rep.failures.front().detail);
  EXPECT_EQ(rep.grid_points, 38u * 5u);
  EXPECT_EQ(rep.formula_mismatches, 0u);
  EXPECT_LE(rep.worst_ldp_margin, 1.0 + 1e-9);
}

TEST(CheckTest, EmptyGridIsUsageError) {
  CheckConfig cfg;
  cfg.eps_list.clear();
  EXPECT_THROW(run_check(cfg), InvalidInput);
}

TEST(SchemaTest, DetectsBothSchemasAndMissingColumns) {
  EXPECT_EQ(detect_schema("mechanism,N,epsilon,m,q_global,q_loss,ratio_to_grr"), CsvSchema::kSweep);
  EXPECT_EQ(detect_schema("N,epsilon,m,q_brr,q_grr,ratio,asymptote,gap\r"), CsvSchema::kRatio);
  EXPECT_THROW(detect_schema("mechanism,N,epsilon"), SchemaError);
  EXPECT_THROW(detect_schema("a,b"), SchemaError);
}

TEST(SchemaTest, ScriptReferencesCsv) {
  EXPECT_THAT(plot_script(CsvSchema::kSweep, "out.csv"), HasSubstr("out.csv"));
  EXPECT_THAT(plot_script(CsvSchema::kRatio, "r.csv"), HasSubstr("asymptote"));
}

TEST(PerturbTest, StreamsAndReportsBadLine) {
  const ContinuousBrr mech(IntervalSpec(1.0, 11.0, 11), PrivacyBudget(50.0));
  std::istringstream in("3\n7.2\nabc\n4\n");
  std::ostringstream out;
  const auto res = run_perturb(mech, 1, in, out);
  EXPECT_EQ(res.lines, 2u);
  EXPECT_EQ(res.bad_line, 3u);
  EXPECT_EQ(out.str(), "3\n7\n");
}

TEST(PerturbTest, LargeBudgetReleasesTruthAcrossSeeds) {
  const ContinuousBrr mech(IntervalSpec(1.0, 101.0, 101), PrivacyBudget(50.0));
  int same = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::istringstream in("42\n");
    std::ostringstream out;
    run_perturb(mech, seed, in, out);
    same += out.str() == "42\n";
  }
  EXPECT_GE(same, 990);
}

TEST(ConfigTest, KeyValueLines) {
  std::istringstream in("# comment\nseed = 4\n\nn-grid=10,20\n");
  const auto kv = parse_key_value_config(in);
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].first, "seed");
  EXPECT_EQ(kv[0].second, "4");
  EXPECT_EQ(kv[1].second, "10,20");
}

}  // namespace
}  // namespace brr
