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

// Execution semantics for programs: sampled single shots on state vectors,
// and exact evolution as a tree of classically-labelled branches.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "qbbt/circuit.hpp"
#include "qbbt/kernels.hpp"
#include "qbbt/qnum.hpp"
#include "qbbt/rng.hpp"

namespace qbbt {

/// Outcomes at or below this probability are never sampled and are pruned
/// from exact branch trees.
inline constexpr double kBranchCutoff = 1e-12;
inline constexpr std::size_t kMaxBranches = std::size_t{1} << 20;

struct CompiledMeasure {
  std::vector<std::uint64_t> masks;  // masks[0] is the MSB of the outcome
  std::uint64_t all = 0;
  int slot = -1;  // -1 for reset
  bool reset = false;
};

struct CompiledConditional {
  int slot;
  std::uint64_t value;
  kernels::CompiledGate gate;
};

using CompiledOp = std::variant<kernels::CompiledGate, CompiledMeasure, CompiledConditional>;

/// A program with every gate bound to bit masks of the full register.
struct CompiledProgram {
  int n_qubits = 0;
  int n_ancilla = 0;
  int slot_count = 0;
  std::vector<CompiledOp> ops;

  int n_total() const { return n_qubits + n_ancilla; }
  std::size_t dim() const { return dim_of(n_total()); }
};

inline CompiledProgram compile(const Program& p) {
  CompiledProgram cp;
  cp.n_qubits = p.n_qubits();
  cp.n_ancilla = p.n_ancilla();
  cp.slot_count = p.slot_count();
  const int n = p.n_total();
  auto measure = [n](const std::vector<int>& targets, int slot, bool reset) {
    CompiledMeasure m;
    for (int q : targets) {
      m.masks.push_back(qubit_mask(q, n));
      m.all |= m.masks.back();
    }
    m.slot = slot;
    m.reset = reset;
    return m;
  };
  for (const auto& ins : p.instructions()) {
    if (const auto* g = std::get_if<GateOp>(&ins)) {
      cp.ops.emplace_back(compile_gate(*g, n));
    } else if (const auto* m = std::get_if<MeasureOp>(&ins)) {
      cp.ops.emplace_back(measure(m->targets, m->slot, false));
    } else if (const auto* r = std::get_if<ResetOp>(&ins)) {
      cp.ops.emplace_back(measure(r->targets, -1, true));
    } else {
      const auto& c = std::get<ConditionalOp>(ins);
      cp.ops.emplace_back(CompiledConditional{c.slot, c.value, compile_gate(c.inner, n)});
    }
  }
  return cp;
}

namespace detail {

inline std::uint64_t outcome_of(std::uint64_t index, const CompiledMeasure& m) {
  std::uint64_t v = 0;
  for (std::uint64_t mask : m.masks) v = (v << 1) | ((index & mask) ? 1u : 0u);
  return v;
}

inline std::uint64_t pattern_of(std::uint64_t outcome, const CompiledMeasure& m) {
  std::uint64_t bits = 0;
  const std::size_t w = m.masks.size();
  for (std::size_t i = 0; i < w; ++i)
    if ((outcome >> (w - 1 - i)) & 1u) bits |= m.masks[i];
  return bits;
}

/// Zeroes every amplitude whose measured bits differ from `pattern`, then
/// for a reset moves the survivors onto the all-zero pattern.
inline void project(std::vector<Complex>& amps, const CompiledMeasure& m, std::uint64_t pattern,
                    double scale) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & m.all) != pattern) {
      amps[i] = 0.0;
    } else {
      amps[i] *= scale;
    }
  }
  if (m.reset && pattern != 0) {
    for (std::uint64_t i = 0; i < amps.size(); ++i)
      if ((i & m.all) == pattern) std::swap(amps[i], amps[i & ~m.all]);
  }
}

inline std::vector<double> outcome_probabilities(std::span<const Complex> amps,
                                                 const CompiledMeasure& m) {
  std::vector<double> probs(std::size_t{1} << m.masks.size(), 0.0);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps[i]);
    if (w != 0.0) probs[outcome_of(i, m)] += w;
  }
  return probs;
}

inline std::vector<Complex> embed_input(const CompiledProgram& cp, std::span<const Complex> input) {
  if (input.size() != dim_of(cp.n_qubits))
    throw RegisterMismatch("input state has " + std::to_string(input.size()) +
                           " amplitudes, program expects " + std::to_string(dim_of(cp.n_qubits)));
  std::vector<Complex> amps(cp.dim());
  const int shift = cp.n_ancilla;
  for (std::size_t i = 0; i < input.size(); ++i) amps[i << shift] = input[i];
  return amps;
}

}  // namespace detail

/// Classical record of one run: slot -> last value written (nullopt if never).
using SlotRecord = std::vector<std::optional<std::uint64_t>>;

/// Runs `cp` in place on `amps` (full register, ancillas included).
inline void run_in_place(const CompiledProgram& cp, std::vector<Complex>& amps, Rng& rng,
                         SlotRecord& slots) {
  slots.assign(cp.slot_count, std::nullopt);
  const std::size_t d = amps.size();
  for (const auto& op : cp.ops) {
    if (const auto* g = std::get_if<kernels::CompiledGate>(&op)) {
      kernels::apply(*g, amps.data(), d);
    } else if (const auto* c = std::get_if<CompiledConditional>(&op)) {
      if (slots[c->slot] == c->value) kernels::apply(c->gate, amps.data(), d);
    } else {
      const auto& m = std::get<CompiledMeasure>(op);
      const auto probs = detail::outcome_probabilities(amps, m);
      double total = 0.0;
      for (double p : probs)
        if (p > kBranchCutoff) total += p;
      if (total < kBranchCutoff) throw SimulationError("measurement with vanishing total probability");
      const double u = rng.uniform() * total;
      std::uint64_t pick = 0;
      double acc = 0.0;
      std::optional<std::uint64_t> last;
      for (std::uint64_t o = 0; o < probs.size(); ++o) {
        if (probs[o] <= kBranchCutoff) continue;
        last = o;
        acc += probs[o];
        if (u < acc) break;
      }
      pick = *last;
      detail::project(amps, m, detail::pattern_of(pick, m), 1.0 / std::sqrt(probs[pick]));
      if (!m.reset) slots[m.slot] = pick;
    }
  }
}

struct ShotResult {
  /// State of the full register (I/O qubits followed by ancillas).
  StateVector collapsed;
  std::map<int, std::uint64_t> classical;
  int n_qubits;

  /// The I/O register state. Requires the ancillas to end in a basis state.
  StateVector io_state() const {
    const int n_anc = collapsed.n_qubits() - n_qubits;
    if (n_anc == 0) return collapsed;
    const std::size_t da = dim_of(n_anc);
    std::vector<double> weight(da, 0.0);
    for (std::size_t i = 0; i < collapsed.dim(); ++i) weight[i % da] += std::norm(collapsed[i]);
    const auto best = static_cast<std::size_t>(
        std::max_element(weight.begin(), weight.end()) - weight.begin());
    if (std::abs(weight[best] - 1.0) > kNormTolerance)
      throw SimulationError("io_state: ancillas are entangled with the I/O register");
    std::vector<Complex> amps(dim_of(n_qubits));
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = collapsed[i * da + best];
    return StateVector(n_qubits, std::move(amps));
  }
};

inline ShotResult run_shot(const CompiledProgram& cp, const StateVector& input, Rng& rng) {
  if (input.n_qubits() != cp.n_qubits)
    throw RegisterMismatch("run_shot: input has " + std::to_string(input.n_qubits()) +
                           " qubits, program has " + std::to_string(cp.n_qubits));
  auto amps = detail::embed_input(cp, input.amps());
  SlotRecord slots;
  run_in_place(cp, amps, rng, slots);
  double norm = 0.0;
  for (const auto& a : amps) norm += std::norm(a);
  for (auto& a : amps) a /= std::sqrt(norm);
  std::map<int, std::uint64_t> classical;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i]) classical.emplace(static_cast<int>(i), *slots[i]);
  return ShotResult{StateVector(cp.n_total(), std::move(amps)), std::move(classical), cp.n_qubits};
}

inline ShotResult run_shot(const Program& p, const StateVector& input, Rng& rng) {
  return run_shot(compile(p), input, rng);
}

// ---------------------------------------------------------------------------
// Exact semantics

/// One branch of a pure-state ensemble. `amps` is unnormalized: its squared
/// norm is the branch probability.
struct PureBranch {
  std::vector<Complex> amps;
  SlotRecord slots;
  double weight() const {
    double w = 0.0;
    for (const auto& a : amps) w += std::norm(a);
    return w;
  }
};

/// Every measurement and reset outcome expanded into its own pure branch.
inline std::vector<PureBranch> exact_branches(const CompiledProgram& cp, std::span<const Complex> input) {
  std::vector<PureBranch> live{{detail::embed_input(cp, input), SlotRecord(cp.slot_count)}};
  const std::size_t d = cp.dim();
  for (const auto& op : cp.ops) {
    if (const auto* g = std::get_if<kernels::CompiledGate>(&op)) {
      for (auto& b : live) kernels::apply(*g, b.amps.data(), d);
    } else if (const auto* c = std::get_if<CompiledConditional>(&op)) {
      for (auto& b : live)
        if (b.slots[c->slot] == c->value) kernels::apply(c->gate, b.amps.data(), d);
    } else {
      const auto& m = std::get<CompiledMeasure>(op);
      std::vector<PureBranch> next;
      for (auto& b : live) {
        const auto probs = detail::outcome_probabilities(b.amps, m);
        for (std::uint64_t o = 0; o < probs.size(); ++o) {
          if (probs[o] <= kBranchCutoff) continue;
          PureBranch nb{b.amps, b.slots};
          detail::project(nb.amps, m, detail::pattern_of(o, m), 1.0);
          if (!m.reset) nb.slots[m.slot] = o;
          next.push_back(std::move(nb));
          if (next.size() > kMaxBranches) throw ResourceError("branch tree exceeds 2^20 branches");
        }
      }
      live = std::move(next);
    }
  }
  double total = 0.0;
  for (const auto& b : live) total += b.weight();
  if (total < kBranchCutoff) throw SimulationError("exact_branches: all branches pruned");
  const double scale = 1.0 / std::sqrt(total);
  for (auto& b : live)
    for (auto& a : b.amps) a *= scale;
  return live;
}

/// Adds w * tr_anc |psi><psi| into `out` (d_io x d_io).
inline void accumulate_reduced(CMatrix& out, std::span<const Complex> psi, int n_ancilla,
                               double w = 1.0) {
  const std::size_t da = dim_of(n_ancilla);
  const std::size_t dio = out.rows();
  for (std::size_t a = 0; a < dio; ++a) {
    for (std::size_t b = 0; b < dio; ++b) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < da; ++c) acc += psi[a * da + c] * std::conj(psi[b * da + c]);
      out(a, b) += w * acc;
    }
  }
}

/// Exact output state of the I/O register for a pure input, via pure branches.
inline DensityMatrix exact_output(const CompiledProgram& cp, const StateVector& input) {
  if (input.n_qubits() != cp.n_qubits) throw RegisterMismatch("exact_output: register size mismatch");
  CMatrix rho(dim_of(cp.n_qubits), dim_of(cp.n_qubits));
  for (const auto& b : exact_branches(cp, input.amps())) accumulate_reduced(rho, b.amps, cp.n_ancilla);
  return DensityMatrix(cp.n_qubits, std::move(rho), DensityMatrix::Unchecked{});
}

inline DensityMatrix exact_output(const Program& p, const StateVector& input) {
  return exact_output(compile(p), input);
}

inline constexpr int kExactChannelMaxQubits = 12;

/// Exact channel action E(rho) by density-matrix branch evolution.
inline DensityMatrix exact_channel(const Program& p, const DensityMatrix& rho) {
  if (rho.n_qubits() != p.n_qubits())
    throw RegisterMismatch("exact_channel: state has " + std::to_string(rho.n_qubits()) +
                           " qubits, program has " + std::to_string(p.n_qubits()));
  if (p.n_total() > kExactChannelMaxQubits) throw DimensionError("exact_channel: too many qubits");
  const CompiledProgram cp = compile(p);
  const std::size_t d = cp.dim();
  const int shift = cp.n_ancilla;

  struct Branch {
    std::vector<Complex> mat;  // row-major d x d, unnormalized
    SlotRecord slots;
  };
  std::vector<Branch> live(1);
  live[0].mat.assign(d * d, 0.0);
  live[0].slots.assign(cp.slot_count, std::nullopt);
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) live[0].mat[(i << shift) * d + (j << shift)] = rho(i, j);

  auto trace_of = [d](const std::vector<Complex>& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < d; ++i) t += m[i * d + i].real();
    return t;
  };

  for (const auto& op : cp.ops) {
    if (const auto* g = std::get_if<kernels::CompiledGate>(&op)) {
      for (auto& b : live) kernels::apply_conjugation(*g, b.mat.data(), d);
    } else if (const auto* c = std::get_if<CompiledConditional>(&op)) {
      for (auto& b : live)
        if (b.slots[c->slot] == c->value) kernels::apply_conjugation(c->gate, b.mat.data(), d);
    } else {
      const auto& m = std::get<CompiledMeasure>(op);
      std::map<SlotRecord, std::vector<Complex>> merged;
      for (auto& b : live) {
        const std::size_t n_out = std::size_t{1} << m.masks.size();
        for (std::uint64_t o = 0; o < n_out; ++o) {
          const std::uint64_t pat = detail::pattern_of(o, m);
          std::vector<Complex> nm(d * d, 0.0);
          double prob = 0.0;
          for (std::uint64_t i = 0; i < d; ++i) {
            if ((i & m.all) != pat) continue;
            prob += b.mat[i * d + i].real();
            const std::uint64_t ti = m.reset ? (i & ~m.all) : i;
            for (std::uint64_t j = 0; j < d; ++j) {
              if ((j & m.all) != pat) continue;
              const std::uint64_t tj = m.reset ? (j & ~m.all) : j;
              nm[ti * d + tj] = b.mat[i * d + j];
            }
          }
          if (prob <= kBranchCutoff) continue;
          SlotRecord key = b.slots;
          if (!m.reset) key[m.slot] = o;
          auto [it, fresh] = merged.try_emplace(std::move(key), std::move(nm));
          if (!fresh)
            for (std::size_t k = 0; k < d * d; ++k) it->second[k] += nm[k];
          if (merged.size() > kMaxBranches) throw ResourceError("branch tree exceeds 2^20 branches");
        }
      }
      live.clear();
      for (auto& [slots, mat] : merged) live.push_back(Branch{std::move(mat), slots});
    }
  }

  double total = 0.0;
  for (const auto& b : live) total += trace_of(b.mat);
  if (total < kBranchCutoff) throw SimulationError("exact_channel: all branches pruned");
  const std::size_t dio = rho.dim(), da = dim_of(shift);
  CMatrix out(dio, dio);
  for (const auto& b : live)
    for (std::size_t a = 0; a < dio; ++a)
      for (std::size_t c = 0; c < dio; ++c) {
        Complex acc = 0.0;
        for (std::size_t x = 0; x < da; ++x) acc += b.mat[(a * da + x) * d + (c * da + x)];
        out(a, c) += acc / total;
      }
  return DensityMatrix(rho.n_qubits(), std::move(out), DensityMatrix::Unchecked{});
}

}  // namespace qbbt
