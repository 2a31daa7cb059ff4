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


// Acceptance runner. Prints one "criterion N: PASS|FAIL" line per criterion
// and exits nonzero if any selected criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbbt/qbbt.hpp"

namespace {

using namespace qbbt;

// Base seed for every seeded run below.
constexpr std::uint64_t kBaseSeed = 7;

// Pinned tolerances.
constexpr double kHoeffdingDelta = 0.01;
constexpr double kBinomialLevel = 0.99;
constexpr int kPassFloor = 90;      // criterion 4, expected-pass entries out of 100
constexpr int kZeroCeiling = 5;     // criterion 4, entries with 0% reference rate
constexpr double kPassRateFloor = 0.85;  // criterion 5
constexpr int kOriginal273Floor = 40;    // criterion 6(c)

struct Options {
  bool quick = false;
};

void detail_line(const char* fmt, auto... args) {
  std::printf("  ");
  std::printf(fmt, args...);
  std::printf("\n");
}

// ---------------------------------------------------------------------------
// 1. Round-count table (alpha2 = 0.1).

bool criterion_1(const Options&) {
  const int ks[] = {1, 2, 3, 4, 6, 10};
  const double eps[] = {0.05, 0.10, 0.15, 0.20};
  const std::uint64_t eq[6][4] = {{9587, 2397, 1066, 600},   {11722, 2931, 1303, 733},
                                  {12991, 3248, 1444, 812},  {13898, 3475, 1545, 869},
                                  {15181, 3796, 1687, 949},  {16804, 4202, 1868, 1051}};
  const std::uint64_t un[6][4] = {{0, 0, 0, 0},           {3428, 857, 381, 215}, {3886, 972, 432, 243},
                                  {4213, 1054, 469, 264}, {4676, 1169, 520, 293}, {5261, 1316, 585, 329}};
  int checked = 0, matched = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 4; ++j) {
      const std::uint64_t e = eq_min_rounds(ks[i], eps[j], 0.1);
      ++checked;
      if (e == eq[i][j]) {
        ++matched;
      } else {
        detail_line("EQ k=%d eps=%.2f: computed %llu (bound %.4f), table %llu", ks[i], eps[j],
                    static_cast<unsigned long long>(e), eq_round_bound(ks[i], eps[j], 0.1),
                    static_cast<unsigned long long>(eq[i][j]));
      }
      if (ks[i] < 2) continue;
      const std::uint64_t u = un_min_rounds(ks[i], eps[j], 0.1);
      ++checked;
      if (u == un[i][j]) {
        ++matched;
      } else {
        detail_line("UN k=%d eps=%.2f: computed %llu (bound %.4f), table %llu", ks[i], eps[j],
                    static_cast<unsigned long long>(u), un_round_bound(ks[i], eps[j], 0.1),
                    static_cast<unsigned long long>(un[i][j]));
      }
    }
  }
  detail_line("%d/%d table cells match exactly", matched, checked);
  return checked == 44 && matched == checked;
}

// ---------------------------------------------------------------------------
// 2. Oracle decisions against the labelled originals.

bool criterion_2(const Options&) {
  const std::map<std::string, bool> unitary{{"Cir1A", true},   {"Cir1B", true},  {"Cir2A", false},
                                            {"Cir2B", false},  {"Empty", true},  {"TeleportABA", true},
                                            {"QFT", true},     {"invQFT", true}, {"QPE", true},
                                            {"invQPE", true},  {"CRot", true},   {"Reset", false}};
  const std::map<std::string, bool> identity{{"Empty", true}, {"TeleportABA", true}};
  bool ok = true;
  for (const auto& name : original_names()) {
    const Program p = build_original(name);
    const bool un = exact_unitary(p);
    const bool id = exact_equivalent(p, Program::empty(p.n_qubits()));
    const bool want_id = identity.count(name) > 0;
    if (un != unitary.at(name) || id != want_id) {
      ok = false;
      detail_line("%s: unitary=%d (want %d), identity=%d (want %d)", name.c_str(), un, unitary.at(name), id,
                  want_id);
    }
  }
  const auto s = suite(false);
  for (const auto& e : s) {
    if (e.expected != Outcome::Pass) continue;
    bool truth = false;
    if (e.task == Task::EQ) truth = exact_equivalent(e.p1, *e.p2);
    else if (e.task == Task::ID) truth = exact_equivalent(e.p1, Program::empty(e.n_qubits()));
    else continue;
    if (!truth) {
      ok = false;
      detail_line("entry %s: oracle rejects the expected-pass label", e.id.c_str());
    }
  }
  try {
    suite(true);
  } catch (const ConsistencyError& err) {
    ok = false;
    detail_line("%s", err.what());
  }
  detail_line("%s", "12 originals and all expected-pass EQ/ID entries checked");
  return ok;
}

// ---------------------------------------------------------------------------
// 3. Orthogonality route vs Choi-rank route.

Program random_two_qubit(Rng& rng, bool measurements, int index) {
  static constexpr Gate one[] = {Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::S, Gate::T, Gate::Rx, Gate::Ry};
  std::vector<Instruction> ops;
  int slots = 0;
  for (int i = 0; i < 8; ++i) {
    const int q = static_cast<int>(rng.uniform_int(2));
    const double u = rng.uniform();
    if (measurements && u < 0.15) {
      ops.emplace_back(MeasureOp{{q}, slots++});
    } else if (measurements && u < 0.22 && slots > 0) {
      ops.emplace_back(ConditionalOp{static_cast<int>(rng.uniform_int(slots)), 1, GateOp{Gate::X, {}, {q}, {}}});
    } else if (u < 0.45) {
      ops.emplace_back(GateOp{Gate::CNOT, {}, {q, 1 - q}, {}});
    } else {
      GateOp g{one[rng.uniform_int(8)], {}, {q}, {}};
      if (gate_param_count(g.gate) == 1) g.params = {rng.uniform() * 6.0};
      ops.emplace_back(std::move(g));
    }
  }
  return Program("rand" + std::to_string(index), 2, 0, std::move(ops));
}

bool criterion_3(const Options&) {
  std::vector<Program> programs;
  for (const auto& e : suite(false)) {
    programs.push_back(e.p1);
    if (e.p2) programs.push_back(*e.p2);
  }
  Rng rng = Rng(kBaseSeed).split(3);
  for (int i = 0; i < 50; ++i) programs.push_back(random_two_qubit(rng, i % 2 == 1, i));
  int agree = 0, unitary = 0;
  for (const auto& p : programs) {
    const bool a = unitary_by_orthogonality(p), b = unitary_by_choi_rank(p);
    if (a == b) ++agree;
    else detail_line("%s: orthogonality=%d choi=%d", p.name().c_str(), a, b);
    unitary += a ? 1 : 0;
  }
  detail_line("%d/%zu programs agree (%d unitary)", agree, programs.size(), unitary);
  return agree == static_cast<int>(programs.size());
}

// ---------------------------------------------------------------------------
// 4. Verdict reproduction over 100 seeded runs.

// Reference %PASS per entry: {original, optimized}; -1 where not applicable.
const std::map<std::string, std::pair<int, int>>& reference_rates() {
  static const std::map<std::string, std::pair<int, int>> r{
      {"1", {100, 100}}, {"2", {100, 100}}, {"3", {100, 100}}, {"4", {100, 100}},
      {"5.1", {2, 0}},   {"5.2", {0, 0}},   {"5.3", {0, 0}},   {"5.4", {0, 0}},   {"5.5", {0, 3}},
      {"6.1", {0, 0}},   {"6.2", {31, 40}}, {"7.1", {45, 28}}, {"7.2", {14, 6}},  {"7.3", {0, 0}},
      {"8.1", {0, 0}},   {"8.2", {1, 1}},   {"8.3", {0, 0}},   {"8.4", {0, 0}},   {"8.5", {0, 0}},
      {"9.1", {0, 0}},   {"9.2", {0, 0}},   {"9.3", {0, 0}},   {"9.4", {0, 0}},   {"9.5", {0, 0}},
      {"10", {100, -1}}, {"11", {100, -1}}, {"12", {100, -1}}, {"13", {100, -1}},
      {"14.1", {0, -1}}, {"14.2", {0, -1}}, {"15.1", {0, -1}}, {"15.2", {0, -1}}, {"15.3", {0, -1}},
      {"15.4", {0, -1}}, {"15.5", {0, -1}}, {"16.1", {0, -1}}, {"16.2", {0, -1}}, {"16.3", {0, -1}},
      {"16.4", {0, -1}}, {"16.5", {0, -1}}, {"17.1", {0, -1}}, {"17.2", {0, -1}}, {"17.3", {0, -1}},
      {"17.4", {0, -1}}, {"17.5", {0, -1}},
      {"18", {100, 100}}, {"19", {100, 98}}, {"20", {100, 99}}, {"21", {100, 100}}, {"22", {100, 100}},
      {"23.1", {99, 99}}, {"23.2", {100, 99}}, {"23.3", {100, 99}},
      {"24", {0, 0}},    {"25", {0, 0}},    {"26", {0, 0}},
      {"27.1", {0, 0}},  {"27.2", {0, 0}},  {"27.3", {74, 0}},  {"27.4", {0, 0}},  {"27.5", {0, 0}},
      {"28.1", {0, 0}},  {"28.2", {0, 0}}};
  return r;
}

CheckConfig table_config(const BenchmarkEntry& e, std::uint64_t seed) {
  CheckConfig c;
  c.k = e.task == Task::ID ? 50 : 4;
  c.epsilon = 0.15;
  c.t = 20;
  c.s = e.task == Task::EQ ? 1545 : 469;
  c.seed = seed;
  return c;
}

bool criterion_4(const Options&) {
  constexpr int kRuns = 100;
  bool ok = true;
  int checked = 0;
  for (const auto& e : suite(false)) {
    const auto [ref_orig, ref_opt] = reference_rates().at(e.id);
    int pass[2] = {0, 0}, triggers = 0;
    for (int r = 0; r < kRuns; ++r) {
      const CheckConfig c = table_config(e, repetition_seed(kBaseSeed, e.id, 4, static_cast<std::uint64_t>(r)));
      pass[0] += run_entry(e, Variant::Original, c).passed() ? 1 : 0;
      if (e.task != Task::ID) {
        const Verdict v = run_entry(e, Variant::Optimized, c);
        pass[1] += v.passed() ? 1 : 0;
        triggers += v.trigger_count;
      }
    }
    const int refs[2] = {ref_orig, ref_opt};
    std::string flag;
    for (int col = 0; col < 2; ++col) {
      if (refs[col] < 0) continue;
      bool good = true;
      if (e.expected == Outcome::Pass) good = pass[col] >= kPassFloor;
      else if (refs[col] == 0) good = pass[col] <= kZeroCeiling;
      else continue;
      ++checked;
      if (!good) {
        ok = false;
        flag += col == 0 ? " <-- original" : " <-- optimized";
      }
    }
    if (e.task == Task::ID)
      detail_line("%-5s %s %s  pass %3d (ref %3d)%s", e.id.c_str(), std::string(task_name(e.task)).c_str(),
                  std::string(outcome_name(e.expected)).c_str(), pass[0], ref_orig, flag.c_str());
    else
      detail_line("%-5s %s %s  original %3d (ref %3d)  optimized %3d (ref %3d)  triggers %3d%s", e.id.c_str(),
                  std::string(task_name(e.task)).c_str(), std::string(outcome_name(e.expected)).c_str(), pass[0],
                  ref_orig, pass[1], ref_opt, triggers, flag.c_str());
  }
  detail_line("%d thresholded cells", checked);
  return ok;
}

// ---------------------------------------------------------------------------
// 5. Type-II guarantee with s = s0 at alpha2 = 0.1.

bool criterion_5(const Options& opt) {
  const int runs = 200;
  bool ok = true;
  int entries = 0;
  for (const auto& e : suite(false)) {
    if (e.expected != Outcome::Pass || e.task == Task::ID) continue;
    if (opt.quick && e.n_qubits() > 3) continue;
    ++entries;
    CheckConfig c;
    c.k = 4;
    c.epsilon = 0.15;
    c.s = min_rounds(e.task, c.k, c.epsilon, 0.1).s;
    int pass = 0;
    for (int r = 0; r < runs; ++r) {
      c.seed = repetition_seed(kBaseSeed, e.id, 5, static_cast<std::uint64_t>(r));
      pass += run_entry(e, Variant::Original, c).passed() ? 1 : 0;
    }
    const double rate = static_cast<double>(pass) / runs;
    const bool good = rate >= kPassRateFloor;
    ok = ok && good;
    detail_line("%-5s %s s=%llu  pass rate %.3f%s", e.id.c_str(), std::string(task_name(e.task)).c_str(),
                static_cast<unsigned long long>(c.s), rate, good ? "" : " <--");
  }
  detail_line("%d entries%s", entries, opt.quick ? " (quick: at most 3 qubits)" : "");
  return ok;
}

// ---------------------------------------------------------------------------
// 6. Deterministic properties of the optimized checkers.

bool criterion_6(const Options&) {
  constexpr int kRuns = 100;
  const auto s = suite(false);
  bool ok = true;

  int pairs = 0, general = 0;
  for (const auto& e : s) {
    if (e.task != Task::EQ || !e.p1.measurement_free() || !e.p2->measurement_free()) continue;
    ++pairs;
    for (int r = 0; r < kRuns; ++r) {
      const CheckConfig c = table_config(e, repetition_seed(kBaseSeed, e.id, 6, static_cast<std::uint64_t>(r)));
      general += eq_check_optimized(e.n_qubits(), c, e.p1, *e.p2).stats.general_branch_points;
    }
  }
  const bool a = pairs > 0 && general == 0;
  detail_line("(a) %d measurement-free pairs x %d runs: %d general-branch points%s", pairs, kRuns, general,
              a ? "" : " <--");

  const auto& reset = find_entry(s, "26");
  int purity_rule = 0, reset_pass = 0;
  for (int r = 0; r < kRuns; ++r) {
    const CheckConfig c = table_config(reset, repetition_seed(kBaseSeed, reset.id, 6, static_cast<std::uint64_t>(r)));
    const Verdict v = un_check_optimized(reset.n_qubits(), c, reset.p1);
    purity_rule += v.trigger_count;
    reset_pass += v.passed() ? 1 : 0;
  }
  const bool b = purity_rule == 0;
  detail_line("(b) Reset x %d runs: purity rule fired %d times, %d PASS%s", kRuns, purity_rule, reset_pass,
              b ? "" : " <--");

  const auto& m273 = find_entry(s, "27.3");
  int opt_pass = 0, orig_pass = 0;
  for (int r = 0; r < kRuns; ++r) {
    const CheckConfig c = table_config(m273, repetition_seed(kBaseSeed, m273.id, 6, static_cast<std::uint64_t>(r)));
    opt_pass += un_check_optimized(m273.n_qubits(), c, m273.p1).passed() ? 1 : 0;
    orig_pass += un_check_original(m273.n_qubits(), c, m273.p1).passed() ? 1 : 0;
  }
  const bool cc = opt_pass == 0 && orig_pass >= kOriginal273Floor;
  detail_line("(c) 27.3 x %d runs: optimized %d PASS, original %d PASS%s", kRuns, opt_pass, orig_pass,
              cc ? "" : " <--");
  ok = a && b && cc;
  return ok;
}

// ---------------------------------------------------------------------------
// 7. Identity-check detection rate.

// Central interval [lo, hi] holding at least `level` of Binomial(n, p).
std::pair<int, int> binomial_band(int n, double p, double level) {
  std::vector<double> pmf(n + 1);
  for (int x = 0; x <= n; ++x)
    pmf[x] = std::exp(std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0) +
                      (x ? x * std::log(p) : 0.0) + (n - x ? (n - x) * std::log1p(-p) : 0.0));
  const double tail = (1.0 - level) / 2.0;
  int lo = 0, hi = n;
  for (double acc = 0.0; lo < n && acc + pmf[lo] <= tail; ++lo) acc += pmf[lo];
  for (double acc = 0.0; hi > 0 && acc + pmf[hi] <= tail; --hi) acc += pmf[hi];
  return {lo, hi};
}

bool criterion_7(const Options&) {
  bool ok = true;
  int empty_pass = 0;
  for (int r = 0; r < 100; ++r)
    empty_pass += id_check(6, 50, programs::empty(), repetition_seed(kBaseSeed, "Empty", 7, r)).passed() ? 1 : 0;
  ok = empty_pass == 100;
  detail_line("Empty: %d/100 PASS%s", empty_pass, empty_pass == 100 ? "" : " <--");

  // Only |0> and |1> of the six Pauli inputs survive X followed by G^-1 as |0>.
  const Program x = ProgramBuilder("X", 1).x(0).build();
  constexpr int kRuns = 2000;
  for (int k = 1; k <= 6; ++k) {
    int pass = 0;
    for (int r = 0; r < kRuns; ++r)
      pass += id_check(1, k, x, repetition_seed(kBaseSeed, "X", static_cast<std::uint64_t>(k), r)).passed() ? 1 : 0;
    const double p = std::pow(1.0 / 3.0, k);
    const auto [lo, hi] = binomial_band(kRuns, p, kBinomialLevel);
    const bool good = pass >= lo && pass <= hi;
    ok = ok && good;
    detail_line("X k=%d: %d/%d PASS, expected %.2f, band [%d, %d]%s", k, pass, kRuns, p * kRuns, lo, hi,
                good ? "" : " <--");
  }
  return ok;
}

// ---------------------------------------------------------------------------
// 8. Swap Test estimator against the exact overlap.

bool criterion_8(const Options&) {
  const std::uint64_t s = 10000;
  // 1 - 2 s1/s has twice the Hoeffding half-width of s1/s.
  const double band = 2.0 * std::sqrt(std::log(2.0 / kHoeffdingDelta) / (2.0 * static_cast<double>(s)));
  const Program mixed = ProgramBuilder("mix", 2).h(0).measure({0}, 0).cx(0, 1).build();
  const Program partial = ProgramBuilder("part", 2).gate(Gate::Ry, {0}, {0.7}).measure({0}, 0).h(1).build();
  const std::vector<std::pair<Program, Program>> pairs{
      {basis_prep(2, 0), basis_prep(2, 0)},
      {basis_prep(2, 0), basis_prep(2, 3)},
      {pauli_prep({2, 0}), pauli_prep({0, 0})},
      {pauli_prep({4, 2}), pauli_prep({2, 5})},
      {superpos_prep(2, 1, 2, 1), superpos_prep(2, 1, 2, -1)},
      {programs::cir1a(), programs::cir1b()},
      {mixed, mixed},
      {mixed, basis_prep(2, 0)},
      {partial, pauli_prep({3, 2})},
      {partial, mixed},
  };
  bool ok = true;
  const auto zero = StateVector::basis(2, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    const double exact = overlap(exact_output(a, zero), exact_output(b, zero));
    const auto c = swap_test(2, s, a, b, Rng(kBaseSeed).split(800 + i));
    const double est = c.overlap_estimate();
    const bool good = std::abs(est - exact) <= band;
    ok = ok && good;
    detail_line("pair %zu (%s, %s): estimate %.4f, exact %.4f%s", i, a.name().c_str(), b.name().c_str(), est,
                exact, good ? "" : " <--");
  }
  detail_line("band half-width %.4f", band);
  return ok;
}

// ---------------------------------------------------------------------------
// 9. Budget bracket and logarithmic growth of s(k).

bool criterion_9(const Options&) {
  Rng rng = Rng(kBaseSeed).split(9);
  int bracketed = 0;
  for (int i = 0; i < 1000; ++i) {
    const int k = 1 + static_cast<int>(rng.uniform_int(1 << 16));
    const double a2 = 1e-4 + (1.0 - 2e-4) * rng.uniform();
    const auto [lo, hi] = budget_bounds(k, a2);
    // Direct evaluation through pow, independent of the library's expm1/log1p form.
    const double exact = 1.0 / (1.0 - std::pow(1.0 - a2, 1.0 / k));
    const double slack = 1e-9 * exact;
    if (lo <= exact + slack && exact <= hi + slack) ++bracketed;
    else detail_line("k=%d alpha2=%.6f: %.9g not in [%.9g, %.9g]", k, a2, exact, lo, hi);
  }
  detail_line("%d/1000 random inputs bracketed", bracketed);

  // s(k) <= 8/eps^2 ln(2k/alpha2) + 1 via the upper bracket, so s(k)/ln k stays
  // below C = 8/eps^2 (1 + ln(2/alpha2)/ln 2) + 2 for k >= 2.
  const double eps = 0.15, a2 = 0.1;
  const double c_eq = 8.0 / (eps * eps) * (1.0 + std::log(2.0 / a2) / std::log(2.0)) + 2.0;
  const double c_un = 2.0 / (eps * eps) / std::log(2.0) * (1.0 + std::log(1.0 / a2) / std::log(2.0)) + 2.0;
  double worst_eq = 0.0, worst_un = 0.0, tail_eq = 0.0;
  for (int k = 2; k <= (1 << 16); ++k) {
    const double lk = std::log(static_cast<double>(k));
    const double req = static_cast<double>(eq_min_rounds(k, eps, a2)) / lk;
    worst_eq = std::max(worst_eq, req);
    worst_un = std::max(worst_un, static_cast<double>(un_min_rounds(k, eps, a2)) / lk);
    if (k == (1 << 16)) tail_eq = req;
  }
  const bool bounded = worst_eq <= c_eq && worst_un <= c_un;
  detail_line("max s/ln k: EQ %.1f (bound %.1f), UN %.1f (bound %.1f); EQ at 2^16: %.1f, limit 8/eps^2 = %.1f",
              worst_eq, c_eq, worst_un, c_un, tail_eq, 8.0 / (eps * eps));
  return bracketed == 1000 && bounded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbbt acceptance runner"};
  int only = 0;
  Options opt;
  app.add_option("--criterion", only, "Run a single criterion (1-9); default runs all")->check(CLI::Range(1, 9));
  app.add_flag("--quick", opt.quick, "Restrict criterion 5 to entries with at most 3 qubits");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<bool(const Options&)>>> criteria{
      {"round-count table", criterion_1},
      {"oracle label consistency", criterion_2},
      {"orthogonality vs Choi rank", criterion_3},
      {"benchmark verdicts, 100 runs", criterion_4},
      {"type-II guarantee at s0, 200 runs", criterion_5},
      {"optimized-checker invariants", criterion_6},
      {"identity-check detection rate", criterion_7},
      {"swap-test estimator band", criterion_8},
      {"budget bracket and log growth", criterion_9},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    bool pass = false;
    try {
      pass = criteria[i].second(opt);
    } catch (const std::exception& e) {
      std::printf("  error: %s\n", e.what());
    }
    std::printf("criterion %zu: %s (%s)\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].first);
    std::fflush(stdout);
    all = all && pass;
  }
  return all ? 0 : 1;
}
