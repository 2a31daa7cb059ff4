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


// qbbt: command-line front end.
//
//   qbbt check {eq|id|un} --p1 FILE [--p2 FILE] --k INT --epsilon FLOAT
//        [--auto-s --alpha2 FLOAT | --s INT] [--optimized --t INT] --seed INT
//   qbbt bench export DIR
//   qbbt experiment --plan PLAN.json --out report.{csv|json} [--quick]
//
// Exit codes: 0 PASS, 1 FAIL, 2 usage or error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbbt/qbbt.hpp"

namespace {

using namespace qbbt;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CheckArgs {
  std::string task;
  std::string p1, p2;
  int k = 4;
  double epsilon = 0.15;
  bool auto_s = false;
  double alpha2 = 0.1;
  std::uint64_t s = 0;
  bool optimized = false;
  std::uint64_t t = 20;
  std::uint64_t seed = 0;
};

std::string describe_input(const std::variant<PauliIndex, BasisPair>& in) {
  if (const auto* k = std::get_if<PauliIndex>(&in)) return "pauli " + to_string(*k);
  const auto& b = std::get<BasisPair>(in);
  return std::string(b.superposition ? "superposition" : "basis") + " (" + std::to_string(b.m) + ", " +
         std::to_string(b.m2) + ")";
}

int run_check(const CheckArgs& a) {
  const Task task = parse_task(a.task);
  if (task == Task::ID && a.optimized) throw DomainError("identity checking has no optimized variant");
  if (task == Task::EQ && a.p2.empty()) throw DomainError("eq needs --p2");
  if (task != Task::EQ && !a.p2.empty()) throw DomainError(a.task + " takes a single program (--p1)");
  if (task != Task::ID && !a.auto_s && a.s == 0) throw DomainError("give --s or --auto-s");

  const Program p1 = load_program(a.p1);
  CheckConfig cfg;
  cfg.k = a.k;
  cfg.epsilon = a.epsilon;
  cfg.t = a.t;
  cfg.seed = a.seed;
  if (task != Task::ID) cfg.s = a.auto_s ? min_rounds(task, a.k, a.epsilon, a.alpha2).s : a.s;

  Verdict v;
  const int n = p1.n_qubits();
  switch (task) {
    case Task::EQ: {
      const Program p2 = load_program(a.p2);
      v = a.optimized ? eq_check_optimized(n, cfg, p1, p2) : eq_check_original(n, cfg, p1, p2);
      break;
    }
    case Task::ID: v = id_check(n, cfg.k, p1, cfg.seed); break;
    case Task::UN: v = a.optimized ? un_check_optimized(n, cfg, p1) : un_check_original(n, cfg, p1); break;
  }

  std::printf("%s %s k=%d", std::string(outcome_name(v.outcome)).c_str(), std::string(task_name(task)).c_str(),
              cfg.k);
  if (task != Task::ID)
    std::printf(" s=%llu epsilon=%g", static_cast<unsigned long long>(cfg.s), cfg.epsilon);
  if (a.optimized) std::printf(" t=%llu", static_cast<unsigned long long>(cfg.t));
  std::printf(" shots=%llu\n", static_cast<unsigned long long>(v.stats.shots));
  if (v.failing_point) {
    const auto& f = *v.failing_point;
    std::printf("  point %d, input %s, rule %s, statistic %g\n", f.point_index, describe_input(f.input).c_str(),
                std::string(rule_name(f.rule)).c_str(), f.statistic);
  }
  return v.passed() ? kExitPass : kExitFail;
}

int run_export(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& e : suite(true)) {
    nlohmann::json item{{"id", e.id},
                        {"task", task_name(e.task)},
                        {"expected", outcome_name(e.expected)},
                        {"n_qubits", e.n_qubits()},
                        {"frozen", e.frozen},
                        {"note", e.note}};
    const std::string f1 = "entry_" + e.id + "_p1.json";
    save_program(e.p1, (fs::path(dir) / f1).string());
    item["p1"] = f1;
    if (e.p2) {
      const std::string f2 = "entry_" + e.id + "_p2.json";
      save_program(*e.p2, (fs::path(dir) / f2).string());
      item["p2"] = f2;
    }
    manifest.push_back(std::move(item));
  }
  std::ofstream out(fs::path(dir) / "manifest.json");
  if (!out) throw FormatError("cannot write manifest in " + dir);
  out << manifest.dump(2) << "\n";
  std::printf("exported %zu entries to %s\n", manifest.size(), dir.c_str());
  return kExitPass;
}

int run_experiment(const std::string& plan_path, const std::string& out_path, bool quick) {
  ExperimentPlan plan = load_plan(plan_path);
  plan.quick = plan.quick || quick;
  const ReportFormat format = format_for_path(out_path);
  const auto report = run_plan(plan, suite(false));
  emit_report(report, format, out_path);
  std::printf("%zu cells written to %s\n", report.cells.size(), out_path.c_str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box testing of quantum programs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qbbt::kVersion));

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Run one equivalence, identity or unitarity check");
  check->add_option("task", ca.task, "eq, id or un")->required()->check(CLI::IsMember({"eq", "id", "un"}));
  check->add_option("--p1", ca.p1, "Program file (JSON)")->required();
  check->add_option("--p2", ca.p2, "Second program file for eq");
  check->add_option("--k", ca.k, "Number of sampled inputs")->check(CLI::PositiveNumber);
  check->add_option("--epsilon", ca.epsilon, "Decision threshold");
  auto* auto_s = check->add_flag("--auto-s", ca.auto_s, "Derive s from k, epsilon and alpha2");
  check->add_option("--alpha2", ca.alpha2, "Type-II error budget for --auto-s")->needs(auto_s);
  check->add_option("--s", ca.s, "Swap Test rounds per estimate")->excludes(auto_s);
  auto* optimized = check->add_flag("--optimized", ca.optimized, "Use the early-exit purity checks");
  check->add_option("--t", ca.t, "Rounds per early-exit test")->needs(optimized);
  check->add_option("--seed", ca.seed, "Base seed");

  std::string export_dir;
  auto* bench = app.add_subcommand("bench", "Benchmark suite utilities");
  bench->require_subcommand(1);
  auto* exp = bench->add_subcommand("export", "Write every suite program and a manifest");
  exp->add_option("dir", export_dir, "Output directory")->required();

  std::string plan_path, out_path;
  bool quick = false;
  auto* experiment = app.add_subcommand("experiment", "Run a sweep plan and write a report");
  experiment->add_option("--plan", plan_path, "Plan file (JSON)")->required();
  experiment->add_option("--out", out_path, "Report path ending in .csv or .json")->required();
  experiment->add_flag("--quick", quick, "Cap repetitions at 20 and s at 500");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*check) return run_check(ca);
    if (*exp) return run_export(export_dir);
    if (*experiment) return run_experiment(plan_path, out_path, quick);
  } catch (const qbbt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
