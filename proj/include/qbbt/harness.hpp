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

// Experiment runner: sweeps suite entries over (k, epsilon, s-fraction, t)
// grids with seeded repetitions, and writes CSV or JSON reports.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qbbt/bench.hpp"
#include "qbbt/checkers.hpp"
#include "qbbt/params.hpp"

namespace qbbt {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Variant { Original, Optimized };

inline std::string_view variant_name(Variant v) { return v == Variant::Original ? "original" : "optimized"; }

inline Variant parse_variant(std::string_view s) {
  if (s == "original") return Variant::Original;
  if (s == "optimized") return Variant::Optimized;
  throw DomainError("unknown variant '" + std::string(s) + "'");
}

/// Runs one check of `e` under `cfg`. Identity entries ignore `variant`.
inline Verdict run_entry(const BenchmarkEntry& e, Variant variant, const CheckConfig& cfg) {
  const int n = e.n_qubits();
  switch (e.task) {
    case Task::EQ:
      return variant == Variant::Original ? eq_check_original(n, cfg, e.p1, *e.p2)
                                          : eq_check_optimized(n, cfg, e.p1, *e.p2);
    case Task::ID: return id_check(n, cfg.k, e.p1, cfg.seed);
    case Task::UN:
      return variant == Variant::Original ? un_check_original(n, cfg, e.p1)
                                          : un_check_optimized(n, cfg, e.p1);
  }
  throw DomainError("run_entry: bad task");
}

struct ExperimentPlan {
  std::vector<std::string> entry_ids;  // empty: every entry matching `tasks`
  std::vector<Task> tasks;             // empty: every task
  std::vector<int> k_values{4};
  std::vector<double> epsilons{0.15};
  std::vector<double> s_fractions{1.0};
  std::vector<std::uint64_t> t_values{20};
  int repetitions = 100;
  std::uint64_t seed = 0;
  Variant variant = Variant::Original;
  double alpha2 = 0.1;
  std::optional<std::uint64_t> s_override;  // replaces the derived s0
  bool quick = false;

  static constexpr int kQuickRepetitions = 20;
  static constexpr std::uint64_t kQuickMaxS = 500;

  void validate() const {
    if (repetitions < 1) throw DomainError("plan: repetitions must be at least 1");
    if (k_values.empty() || epsilons.empty() || s_fractions.empty() || t_values.empty())
      throw DomainError("plan: empty sweep axis");
    for (double f : s_fractions)
      if (!(f > 0.0 && f <= 1.0)) throw DomainError("plan: s fractions must lie in (0, 1]");
    for (int k : k_values)
      if (k < 1) throw DomainError("plan: k must be at least 1");
    for (double e : epsilons)
      if (!(e > 0.0 && e < 1.0)) throw DomainError("plan: epsilon must lie in (0, 1)");
    for (auto t : t_values)
      if (t < 1) throw DomainError("plan: t must be at least 1");
    if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw DomainError("plan: alpha2 must lie in (0, 1)");
  }
};

struct CellResult {
  std::string entry_id;
  Task task = Task::EQ;
  Variant variant = Variant::Original;
  int k = 0;
  double epsilon = 0.0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  int repetitions = 0;
  int pass_count = 0;
  int trigger_count = 0;
  std::uint64_t total_shots = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;

  double mean_shots() const {
    return repetitions ? static_cast<double>(total_shots) / repetitions : 0.0;
  }
  bool same_outcome(const CellResult& o) const {
    return entry_id == o.entry_id && task == o.task && variant == o.variant && k == o.k &&
           epsilon == o.epsilon && s == o.s && t == o.t && repetitions == o.repetitions &&
           pass_count == o.pass_count && trigger_count == o.trigger_count &&
           total_shots == o.total_shots && seed == o.seed;
  }
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  std::string version{kVersion};
  std::vector<CellResult> cells;
};

/// Seed of repetition `rep` of config `config` of entry `id`.
inline std::uint64_t repetition_seed(std::uint64_t base, std::string_view id, std::uint64_t config,
                                     std::uint64_t rep) {
  Rng r = Rng(base).split(stable_hash(id)).split(config).split(rep);
  return r.next_u64();
}

/// Worker count: hardware concurrency, capped by QBBT_THREADS when set.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QBBT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Runs jobs 0..count-1 on a pool of `workers` threads. The first exception
/// is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

struct CellJob {
  const BenchmarkEntry* entry;
  std::uint64_t config_index;
  int k;
  double epsilon;
  std::uint64_t s;
  std::uint64_t t;
};

inline std::vector<const BenchmarkEntry*> select_entries(const std::vector<BenchmarkEntry>& all,
                                                         const ExperimentPlan& plan) {
  std::vector<const BenchmarkEntry*> out;
  for (const auto& id : plan.entry_ids) {
    const auto& e = find_entry(all, id);
    if (plan.tasks.empty() || std::ranges::find(plan.tasks, e.task) != plan.tasks.end()) out.push_back(&e);
  }
  if (plan.entry_ids.empty())
    for (const auto& e : all)
      if (plan.tasks.empty() || std::ranges::find(plan.tasks, e.task) != plan.tasks.end())
        out.push_back(&e);
  return out;
}

/// Expands the sweep axes into cells. Identity entries take only the k axis;
/// unitarity entries skip k < 2; original-variant cells report t = 0.
inline std::vector<CellJob> expand(const std::vector<const BenchmarkEntry*>& entries,
                                   const ExperimentPlan& plan) {
  std::vector<CellJob> jobs;
  for (const auto* e : entries) {
    std::uint64_t config = 0;
    if (e->task == Task::ID) {
      for (int k : plan.k_values) jobs.push_back({e, config++, k, 0.0, 0, 0});
      continue;
    }
    const std::vector<std::uint64_t> ts =
        plan.variant == Variant::Optimized ? plan.t_values : std::vector<std::uint64_t>{0};
    for (int k : plan.k_values) {
      if (e->task == Task::UN && k < 2) continue;
      for (double eps : plan.epsilons) {
        const std::uint64_t s0 = plan.s_override ? *plan.s_override
                                                 : min_rounds(e->task, k, eps, plan.alpha2).s;
        for (double f : plan.s_fractions) {
          std::uint64_t s = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(f * s0)));
          if (plan.quick) s = std::min(s, ExperimentPlan::kQuickMaxS);
          for (auto t : ts) jobs.push_back({e, config++, k, eps, s, t});
        }
      }
    }
  }
  return jobs;
}

}  // namespace detail

inline ExperimentReport run_plan(const ExperimentPlan& plan, const std::vector<BenchmarkEntry>& entries) {
  plan.validate();
  const int reps = plan.quick ? std::min(plan.repetitions, ExperimentPlan::kQuickRepetitions)
                              : plan.repetitions;
  const auto selected = detail::select_entries(entries, plan);
  const auto jobs = detail::expand(selected, plan);
  ExperimentReport report;
  report.seed = plan.seed;
  report.cells.resize(jobs.size());
  parallel_for(jobs.size(), worker_count(), [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto start = std::chrono::steady_clock::now();
    CellResult cell;
    cell.entry_id = job.entry->id;
    cell.task = job.entry->task;
    cell.variant = job.entry->task == Task::ID ? Variant::Original : plan.variant;
    cell.k = job.k;
    cell.epsilon = job.epsilon;
    cell.s = job.s;
    cell.t = job.t;
    cell.repetitions = reps;
    cell.seed = repetition_seed(plan.seed, job.entry->id, job.config_index, 0);
    for (int r = 0; r < reps; ++r) {
      CheckConfig cfg;
      cfg.k = job.k;
      cfg.s = std::max<std::uint64_t>(job.s, 1);
      cfg.t = std::max<std::uint64_t>(job.t, 1);
      cfg.epsilon = job.entry->task == Task::ID ? 0.5 : job.epsilon;
      cfg.seed = repetition_seed(plan.seed, job.entry->id, job.config_index, static_cast<std::uint64_t>(r));
      const Verdict v = run_entry(*job.entry, cell.variant, cfg);
      cell.pass_count += v.passed() ? 1 : 0;
      cell.trigger_count += v.trigger_count;
      cell.total_shots += v.stats.shots;
    }
    cell.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.cells[i] = std::move(cell);
  });
  return report;
}

// ---------------------------------------------------------------------------
// Plan and report formats

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
  try {
    ExperimentPlan p;
    p.entry_ids = j.value("entries", std::vector<std::string>{});
    for (const auto& t : j.value("tasks", std::vector<std::string>{})) p.tasks.push_back(parse_task(t));
    p.k_values = j.value("k", p.k_values);
    p.epsilons = j.value("epsilon", p.epsilons);
    p.s_fractions = j.value("s_fraction", p.s_fractions);
    p.t_values = j.value("t", p.t_values);
    p.repetitions = j.value("repetitions", p.repetitions);
    p.seed = j.value("seed", p.seed);
    p.variant = parse_variant(j.value("variant", std::string("original")));
    p.alpha2 = j.value("alpha2", p.alpha2);
    if (j.contains("s")) p.s_override = j.at("s").get<std::uint64_t>();
    p.quick = j.value("quick", false);
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("plan JSON: ") + e.what());
  }
}

inline ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return plan_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("plan JSON: ") + e.what());
  }
}

inline constexpr std::string_view kCsvHeader =
    "entry_id,task,variant,k,epsilon,s,t,repetitions,pass_count,trigger_count,total_shots,wall_ms,seed";

inline nlohmann::json to_json(const CellResult& c) {
  return {{"entry_id", c.entry_id},       {"task", task_name(c.task)},
          {"variant", variant_name(c.variant)}, {"k", c.k},
          {"epsilon", c.epsilon},         {"s", c.s},
          {"t", c.t},                     {"repetitions", c.repetitions},
          {"pass_count", c.pass_count},   {"trigger_count", c.trigger_count},
          {"total_shots", c.total_shots}, {"wall_ms", c.wall_ms},
          {"seed", c.seed}};
}

inline nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return {{"metadata", {{"seed", r.seed}, {"version", r.version}}}, {"cells", std::move(cells)}};
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  try {
    ExperimentReport r;
    r.seed = j.at("metadata").at("seed").get<std::uint64_t>();
    r.version = j.at("metadata").at("version").get<std::string>();
    for (const auto& c : j.at("cells")) {
      CellResult x;
      x.entry_id = c.at("entry_id").get<std::string>();
      x.task = parse_task(c.at("task").get<std::string>());
      x.variant = parse_variant(c.at("variant").get<std::string>());
      x.k = c.at("k").get<int>();
      x.epsilon = c.at("epsilon").get<double>();
      x.s = c.at("s").get<std::uint64_t>();
      x.t = c.at("t").get<std::uint64_t>();
      x.repetitions = c.at("repetitions").get<int>();
      x.pass_count = c.at("pass_count").get<int>();
      x.trigger_count = c.at("trigger_count").get<int>();
      x.total_shots = c.at("total_shots").get<std::uint64_t>();
      x.wall_ms = c.at("wall_ms").get<double>();
      x.seed = c.at("seed").get<std::uint64_t>();
      r.cells.push_back(std::move(x));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report JSON: ") + e.what());
  }
}

inline std::string to_csv(const ExperimentReport& r) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& c : r.cells) {
    out += c.entry_id + ',' + std::string(task_name(c.task)) + ',' + std::string(variant_name(c.variant)) +
           ',' + std::to_string(c.k) + ',' + nlohmann::json(c.epsilon).dump() + ',' + std::to_string(c.s) +
           ',' + std::to_string(c.t) + ',' + std::to_string(c.repetitions) + ',' +
           std::to_string(c.pass_count) + ',' + std::to_string(c.trigger_count) + ',' +
           std::to_string(c.total_shots) + ',' + nlohmann::json(c.wall_ms).dump() + ',' +
           std::to_string(c.seed) + '\n';
  }
  return out;
}

enum class ReportFormat { Csv, Json };

/// Picks the format from the file extension (.csv or .json).
inline ReportFormat format_for_path(const std::string& path) {
  if (path.ends_with(".csv")) return ReportFormat::Csv;
  if (path.ends_with(".json")) return ReportFormat::Json;
  throw DomainError("report path must end in .csv or .json: " + path);
}

inline void emit_report(const ExperimentReport& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << (format == ReportFormat::Csv ? to_csv(r) : to_json(r).dump(2) + "\n");
  if (!out) throw FormatError("write failed for " + path);
}

/// Spearman rank correlation (average ranks for ties); NaN if either side is constant.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman: need two equal-length series");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::ranges::sort(idx, [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t m = i; m <= j; ++m) r[idx[m]] = 0.5 * static_cast<double>(i + j) + 1.0;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace qbbt
