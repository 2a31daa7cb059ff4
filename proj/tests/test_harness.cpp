// Copyright 2026 The qbbt Authors
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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace qbbt {
namespace {

std::vector<BenchmarkEntry> few() {
  const auto s = suite(false);
  std::vector<BenchmarkEntry> out;
  for (const auto& e : s)
    if (e.id == "1" || e.id == "5.1" || e.id == "10" || e.id == "14.1" || e.id == "18" || e.id == "24")
      out.push_back(e);
  return out;
}

ExperimentPlan small_plan() {
  ExperimentPlan p;
  p.repetitions = 5;
  p.seed = 42;
  p.k_values = {1, 3};
  p.s_override = 200;
  return p;
}

TEST(RunEntry, DispatchesOnTask) {
  const auto entries = few();
  CheckConfig cfg;
  cfg.s = 300;
  cfg.seed = 9;
  for (const auto& e : entries) {
    const Verdict o = run_entry(e, Variant::Original, cfg);
    const Verdict p = run_entry(e, Variant::Optimized, cfg);
    EXPECT_EQ(o.passed(), e.expected == Outcome::Pass) << e.id;
    EXPECT_EQ(p.passed(), e.expected == Outcome::Pass) << e.id;
  }
}

TEST(RepetitionSeed, DependsOnEveryArgument) {
  const auto s = repetition_seed(1, "5.1", 0, 0);
  EXPECT_EQ(s, repetition_seed(1, "5.1", 0, 0));
  EXPECT_NE(s, repetition_seed(2, "5.1", 0, 0));
  EXPECT_NE(s, repetition_seed(1, "5.2", 0, 0));
  EXPECT_NE(s, repetition_seed(1, "5.1", 1, 0));
  EXPECT_NE(s, repetition_seed(1, "5.1", 0, 1));
}

TEST(RunPlan, CellLayout) {
  const auto report = run_plan(small_plan(), few());
  // EQ and ID entries get both k values; UN entries skip k = 1.
  ASSERT_EQ(report.cells.size(), 10u);
  for (const auto& c : report.cells) {
    EXPECT_EQ(c.repetitions, 5);
    if (c.task == Task::UN) {
      EXPECT_EQ(c.k, 3);
    }
    if (c.task != Task::ID) {
      EXPECT_EQ(c.s, 200u);
    }
    EXPECT_EQ(c.t, 0u);
  }
}

TEST(RunPlan, ReproducibleForAFixedSeed) {
  const auto a = run_plan(small_plan(), few()), b = run_plan(small_plan(), few());
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_TRUE(a.cells[i].same_outcome(b.cells[i])) << i;
}

TEST(RunPlan, OptimizedSweepsT) {
  ExperimentPlan p = small_plan();
  p.variant = Variant::Optimized;
  p.t_values = {1, 5};
  p.entry_ids = {"1", "10"};
  const auto r = run_plan(p, few());
  // Entry 1: 2 k values x 2 t values; entry 10: 2 k values.
  ASSERT_EQ(r.cells.size(), 6u);
  EXPECT_EQ(r.cells[0].variant, Variant::Optimized);
  EXPECT_EQ(r.cells[4].variant, Variant::Original);
}

TEST(RunPlan, QuickModeCapsWork) {
  ExperimentPlan p = small_plan();
  p.s_override.reset();
  p.repetitions = 100;
  p.quick = true;
  p.entry_ids = {"1"};
  const auto r = run_plan(p, few());
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.repetitions, ExperimentPlan::kQuickRepetitions);
    EXPECT_LE(c.s, ExperimentPlan::kQuickMaxS);
  }
}

TEST(RunPlan, SFractionsScaleTheDerivedBudget) {
  ExperimentPlan p;
  p.repetitions = 1;
  p.entry_ids = {"1"};
  p.s_fractions = {0.5, 1.0};
  const auto r = run_plan(p, few());
  ASSERT_EQ(r.cells.size(), 2u);
  EXPECT_EQ(r.cells[1].s, 1545u);
  EXPECT_EQ(r.cells[0].s, 773u);
}

TEST(PlanJson, ParsesAndValidates) {
  const auto p = plan_from_json(nlohmann::json::parse(
      R"({"entries":["1"],"tasks":["EQ"],"k":[2],"epsilon":[0.1],"t":[3],"repetitions":7,"seed":5,
          "variant":"optimized","s":99,"quick":true})"));
  EXPECT_EQ(p.entry_ids, std::vector<std::string>{"1"});
  EXPECT_EQ(p.variant, Variant::Optimized);
  EXPECT_EQ(*p.s_override, 99u);
  EXPECT_TRUE(p.quick);
  EXPECT_THROW(plan_from_json(nlohmann::json::parse(R"({"repetitions":0})")), DomainError);
  EXPECT_THROW(plan_from_json(nlohmann::json::parse(R"({"k":"four"})")), FormatError);
  EXPECT_THROW(plan_from_json(nlohmann::json::parse(R"({"variant":"fast"})")), DomainError);
  EXPECT_THROW(load_plan("/nonexistent/plan.json"), FormatError);
}

TEST(Report, JsonRoundTrip) {
  const auto r = run_plan(small_plan(), few());
  const auto back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.version, kVersion);
  ASSERT_EQ(back.cells.size(), r.cells.size());
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    EXPECT_TRUE(back.cells[i].same_outcome(r.cells[i]));
    EXPECT_EQ(back.cells[i].wall_ms, r.cells[i].wall_ms);
  }
  EXPECT_THROW(report_from_json(nlohmann::json::parse("{}")), FormatError);
}

TEST(Report, CsvHasOneLinePerCell) {
  const auto r = run_plan(small_plan(), few());
  std::istringstream in(to_csv(r));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12);
  }
  EXPECT_EQ(rows, static_cast<int>(r.cells.size()));
}

TEST(Report, EmitPicksFormatFromExtension) {
  EXPECT_EQ(format_for_path("a.csv"), ReportFormat::Csv);
  EXPECT_EQ(format_for_path("a.json"), ReportFormat::Json);
  EXPECT_THROW(format_for_path("a.txt"), DomainError);
  const auto path = std::filesystem::temp_directory_path() / "qbbt_harness_report.json";
  ExperimentReport r;
  r.seed = 3;
  emit_report(r, ReportFormat::Json, path.string());
  std::ifstream in(path);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(in)).seed, 3u);
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(r, ReportFormat::Csv, "/nonexistent/dir/r.csv"), FormatError);
}

TEST(RunPlan, EmptyIdentityAlwaysPasses) {
  ExperimentPlan p;
  p.entry_ids = {"10"};
  p.k_values = {50};
  p.seed = 1;
  const auto r = run_plan(p, suite(false));
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].pass_count, 100);
}

TEST(RunPlan, ResetIsNeverUnitary) {
  ExperimentPlan p;
  p.entry_ids = {"26"};
  p.seed = 1;
  const auto r = run_plan(p, suite(false));
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].s, 469u);
  EXPECT_EQ(r.cells[0].pass_count, 0);
}

TEST(RunPlan, Cir1PassesAtEverySFraction) {
  ExperimentPlan p;
  p.entry_ids = {"1"};
  p.s_fractions = {0.05, 0.1, 0.25, 0.5, 1.0};
  p.seed = 1;
  const auto r = run_plan(p, suite(false));
  ASSERT_EQ(r.cells.size(), 5u);
  for (const auto& c : r.cells) EXPECT_EQ(c.pass_count, 100) << c.s;
}

TEST(RunPlan, PassCountsDoNotRiseWithK) {
  ExperimentPlan p;
  p.entry_ids = {"6.2", "7.1", "7.2"};
  p.k_values = {1, 2, 4, 6, 10};
  p.epsilons = {0.15};
  p.s_override = 400;
  p.repetitions = 60;
  p.seed = 1;
  const auto r = run_plan(p, suite(false));
  ASSERT_EQ(r.cells.size(), 15u);
  double total = 0.0;
  for (std::size_t e = 0; e < 3; ++e) {
    std::vector<double> k, pass;
    for (std::size_t i = 0; i < 5; ++i) {
      k.push_back(r.cells[e * 5 + i].k);
      pass.push_back(r.cells[e * 5 + i].pass_count);
    }
    total += spearman(k, pass);
  }
  EXPECT_LE(total / 3.0, 0.0);
}

TEST(Report, EmptyReportIsHeaderOnlyCsv) {
  EXPECT_EQ(to_csv(ExperimentReport{}), std::string(kCsvHeader) + "\n");
}

TEST(Spearman, KnownValues) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  // Ties get average ranks: x ranks (1, 2.5, 2.5, 4).
  EXPECT_NEAR(spearman({1, 2, 2, 3}, {1, 2, 3, 4}), 0.9486832980505138, 1e-12);
  EXPECT_TRUE(std::isnan(spearman({1, 1, 1}, {1, 2, 3})));
  EXPECT_THROW(spearman({1}, {1}), DomainError);
}

TEST(ParallelFor, RethrowsTheFirstError) {
  std::vector<int> hit(50, 0);
  parallel_for(hit.size(), 3, [&](std::size_t i) { hit[i] = 1; });
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 50);
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) {
                 if (i == 4) throw DomainError("boom");
               }),
               DomainError);
}

}  // namespace
}  // namespace qbbt
