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

// Black-box decision procedures: equivalence (original and optimized),
// identity, unitarity (original and optimized).
//
// Point i of a check draws everything from Rng(cfg.seed).split(i): its input
// first, then one child stream per Swap Test it runs.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "qbbt/circuit.hpp"
#include "qbbt/sim.hpp"
#include "qbbt/states.hpp"
#include "qbbt/swaptest.hpp"

namespace qbbt {

struct CheckConfig {
  int k = 4;
  std::uint64_t s = 1545;
  std::uint64_t t = 20;
  double epsilon = 0.15;
  std::uint64_t seed = 0;
  ShotEngine engine = ShotEngine::Factored;
};

enum class Outcome { Pass, Fail };
enum class Rule { Threshold, PurityMismatch, PureOverlap, PurityViolation, NonzeroMeasurement };

inline std::string_view outcome_name(Outcome o) { return o == Outcome::Pass ? "PASS" : "FAIL"; }

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::Threshold: return "threshold";
    case Rule::PurityMismatch: return "purity-mismatch";
    case Rule::PureOverlap: return "pure-overlap";
    case Rule::PurityViolation: return "purity-violation";
    case Rule::NonzeroMeasurement: return "nonzero-measurement";
  }
  return "?";
}

/// Type (a) basis pair or type (b) superposition pair of a unitarity point.
struct BasisPair {
  std::uint64_t m;
  std::uint64_t m2;
  bool superposition;
};

struct FailingPoint {
  int point_index;
  std::variant<PauliIndex, BasisPair> input;
  double statistic;
  Rule rule;
};

struct CheckStats {
  std::uint64_t shots = 0;
  int points_run = 0;
  int general_branch_points = 0;  // optimized EQ points that fell back to full Swap Tests
  int purity_probes = 0;
};

struct Verdict {
  Outcome outcome = Outcome::Pass;
  std::optional<FailingPoint> failing_point;
  int trigger_count = 0;
  CheckStats stats;

  bool passed() const { return outcome == Outcome::Pass; }
};

namespace detail {

enum Stream : std::uint64_t { kS1 = 1, kS2 = 2, kS12 = 3, kPure1 = 4, kPure2 = 5, kCross = 6 };

inline void validate(const CheckConfig& cfg, int min_k, bool needs_t) {
  if (cfg.k < min_k) throw DomainError("check: k must be at least " + std::to_string(min_k));
  if (cfg.s < 1) throw DomainError("check: s must be at least 1");
  if (needs_t && cfg.t < 1) throw DomainError("check: t must be at least 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw DomainError("check: epsilon must lie in (0, 1)");
}

inline void require_width(int n, const Program& p) {
  if (p.n_qubits() != n)
    throw RegisterMismatch("check: program " + p.name() + " has " + std::to_string(p.n_qubits()) +
                           " qubits, expected " + std::to_string(n));
}

inline Verdict fail(Verdict v, int point, std::variant<PauliIndex, BasisPair> input, double stat,
                    Rule rule) {
  v.outcome = Outcome::Fail;
  v.failing_point = FailingPoint{point, std::move(input), stat, rule};
  if (rule == Rule::PurityMismatch || rule == Rule::PureOverlap || rule == Rule::PurityViolation)
    v.trigger_count += 1;
  return v;
}

/// |(2 s12 - s1 - s2) / s| from three Swap Tests on the given outputs.
inline double e_statistic(const Program& out1, const Program& out2, const CheckConfig& cfg,
                          const Rng& point, CheckStats& stats) {
  const auto s1 = SwapTester(out1, out1, cfg.engine).run(cfg.s, point.split(kS1));
  const auto s2 = SwapTester(out2, out2, cfg.engine).run(cfg.s, point.split(kS2));
  const auto s12 = SwapTester(out1, out2, cfg.engine).run(cfg.s, point.split(kS12));
  stats.shots += 3 * cfg.s;
  const double num = 2.0 * static_cast<double>(s12.ones) - static_cast<double>(s1.ones) -
                     static_cast<double>(s2.ones);
  return std::abs(num / static_cast<double>(cfg.s));
}

inline BasisPair draw_unitarity_pair(int n, int i, int k, Rng& r) {
  const std::uint64_t d = dim_of(n);
  const std::uint64_t m = r.uniform_int(d);
  if (i < (k + 1) / 2) return BasisPair{m, ~m & (d - 1), true};
  std::uint64_t m2 = r.uniform_int(d - 1);
  if (m2 >= m) ++m2;
  return BasisPair{m, m2, false};
}

inline Verdict un_points(int n, const CheckConfig& cfg, const Program& p, int index_offset,
                         Verdict v) {
  const Rng root(cfg.seed);
  for (int i = 0; i < cfg.k; ++i) {
    const int index = index_offset + i;
    Rng r = root.split(static_cast<std::uint64_t>(index));
    const BasisPair pair = draw_unitarity_pair(n, i, cfg.k, r);
    const Program in1 = pair.superposition ? superpos_prep(n, pair.m, pair.m2, 1) : basis_prep(n, pair.m);
    const Program in2 = pair.superposition ? superpos_prep(n, pair.m, pair.m2, -1) : basis_prep(n, pair.m2);
    const auto c = SwapTester(compose(in1, p), compose(in2, p), cfg.engine).run(cfg.s, r.split(kS1));
    v.stats.shots += cfg.s;
    v.stats.points_run += 1;
    const double rv = c.overlap_estimate();
    if (std::abs(rv) > cfg.epsilon) return fail(std::move(v), index, pair, rv, Rule::Threshold);
  }
  return v;
}

}  // namespace detail

inline Verdict eq_check_original(int n, const CheckConfig& cfg, const Program& p1, const Program& p2) {
  detail::validate(cfg, 1, false);
  detail::require_width(n, p1);
  detail::require_width(n, p2);
  Verdict v;
  const Rng root(cfg.seed);
  for (int i = 0; i < cfg.k; ++i) {
    Rng r = root.split(static_cast<std::uint64_t>(i));
    const PauliIndex key = random_pauli_index(n, r);
    const Program g = pauli_prep(key);
    v.stats.points_run += 1;
    const double e = detail::e_statistic(compose(g, p1), compose(g, p2), cfg, r, v.stats);
    if (e > cfg.epsilon) return detail::fail(std::move(v), i, key, e, Rule::Threshold);
  }
  return v;
}

inline Verdict eq_check_optimized(int n, const CheckConfig& cfg, const Program& p1, const Program& p2) {
  detail::validate(cfg, 1, true);
  detail::require_width(n, p1);
  detail::require_width(n, p2);
  Verdict v;
  const Rng root(cfg.seed);
  for (int i = 0; i < cfg.k; ++i) {
    Rng r = root.split(static_cast<std::uint64_t>(i));
    const PauliIndex key = random_pauli_index(n, r);
    const Program g = pauli_prep(key);
    const Program out1 = compose(g, p1), out2 = compose(g, p2);
    v.stats.points_run += 1;
    const auto pure1 = SwapTester(out1, out1, cfg.engine).run_until_one(cfg.t, r.split(detail::kPure1));
    const auto pure2 = SwapTester(out2, out2, cfg.engine).run_until_one(cfg.t, r.split(detail::kPure2));
    v.stats.purity_probes += 2;
    v.stats.shots += pure1.shots + pure2.shots;
    if (pure1.equal != pure2.equal)
      return detail::fail(std::move(v), i, key, pure1.equal ? 1.0 : 0.0, Rule::PurityMismatch);
    if (pure1.equal) {
      const auto cross = SwapTester(out1, out2, cfg.engine).run_until_one(cfg.t, r.split(detail::kCross));
      v.stats.shots += cross.shots;
      if (!cross.equal)
        return detail::fail(std::move(v), i, key, static_cast<double>(cross.shots), Rule::PureOverlap);
    } else {
      v.stats.general_branch_points += 1;
      const double e = detail::e_statistic(out1, out2, cfg, r, v.stats);
      if (e > cfg.epsilon) return detail::fail(std::move(v), i, key, e, Rule::Threshold);
    }
  }
  return v;
}

/// Identity check: G_K, then P, then G_K^-1, then measure the register.
inline Verdict id_check(int n, int k, const Program& p, std::uint64_t seed) {
  if (k < 1) throw DomainError("id_check: k must be at least 1");
  detail::require_width(n, p);
  Verdict v;
  const Rng root(seed);
  std::vector<int> all(n);
  for (int q = 0; q < n; ++q) all[q] = q;
  for (int i = 0; i < k; ++i) {
    Rng r = root.split(static_cast<std::uint64_t>(i));
    const PauliIndex key = random_pauli_index(n, r);
    const Program body = compose(compose(pauli_prep(key), p), pauli_prep_inverse(key));
    auto ops = body.instructions();
    const int slot = body.slot_count();
    ops.emplace_back(MeasureOp{all, slot});
    const CompiledProgram cp = compile(Program(body.name(), n, body.n_ancilla(), std::move(ops)));
    std::vector<Complex> zero(dim_of(n));
    zero[0] = 1.0;
    auto amps = detail::embed_input(cp, zero);
    SlotRecord slots;
    Rng shot = r.split(1);
    run_in_place(cp, amps, shot, slots);
    v.stats.shots += 1;
    v.stats.points_run += 1;
    if (*slots[slot] != 0)
      return detail::fail(std::move(v), i, key, static_cast<double>(*slots[slot]),
                          Rule::NonzeroMeasurement);
  }
  return v;
}

inline Verdict un_check_original(int n, const CheckConfig& cfg, const Program& p) {
  detail::validate(cfg, 2, false);
  detail::require_width(n, p);
  return detail::un_points(n, cfg, p, 0, Verdict{});
}

/// k purity probes on Pauli inputs, then the original check with point
/// indices continuing at k.
inline Verdict un_check_optimized(int n, const CheckConfig& cfg, const Program& p) {
  detail::validate(cfg, 2, true);
  detail::require_width(n, p);
  Verdict v;
  const Rng root(cfg.seed);
  for (int i = 0; i < cfg.k; ++i) {
    Rng r = root.split(static_cast<std::uint64_t>(i));
    const PauliIndex key = random_pauli_index(n, r);
    const Program out = compose(pauli_prep(key), p);
    const auto probe = SwapTester(out, out, cfg.engine).run_until_one(cfg.t, r.split(detail::kPure1));
    v.stats.purity_probes += 1;
    v.stats.points_run += 1;
    v.stats.shots += probe.shots;
    if (!probe.equal)
      return detail::fail(std::move(v), i, key, static_cast<double>(probe.shots), Rule::PurityViolation);
  }
  return detail::un_points(n, cfg, p, cfg.k, std::move(v));
}

}  // namespace qbbt
