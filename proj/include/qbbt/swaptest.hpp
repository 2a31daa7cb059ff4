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

// Sampled Swap Test and its early-exit variant.
//
// Two engines produce identically distributed counts. `FullCircuit` runs the
// 2n+1 qubit circuit (H, three ancilla-controlled CNOTs per qubit pair, H,
// measure) shot by shot. `Factored` runs the two preparations separately and
// draws the ancilla outcome from Pr['1'] = (1 - tr(rho1 rho2)) / 2, where
// tr(rho1 rho2) is computed from the two sampled pure states.
//
// Stream rule: shot i uses rng.split(i). The factored engine draws prep1 from
// split(i).split(1), prep2 from split(i).split(2) and the ancilla from
// split(i).split(3); the full-circuit engine consumes split(i) directly.

#pragma once

#include <cstdint>

#include "qbbt/circuit.hpp"
#include "qbbt/rng.hpp"
#include "qbbt/sim.hpp"

namespace qbbt {

enum class ShotEngine { Factored, FullCircuit };

struct SwapTestCount {
  std::uint64_t rounds = 0;
  std::uint64_t ones = 0;
  /// 1 - 2 s1 / s, the estimate of tr(rho1 rho2).
  double overlap_estimate() const {
    return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(rounds);
  }
};

struct EarlyExitResult {
  bool equal = true;  // every shot gave '0'
  std::uint64_t shots = 0;
};

/// The composite Swap Test program: I/O qubit 0 is the ancilla, qubits 1..n
/// hold prep1's register and n+1..2n hold prep2's. Preparation workspace
/// qubits follow as ancillas. The ancilla outcome lands in the last slot.
inline Program swap_test_circuit(const Program& prep1, const Program& prep2) {
  if (prep1.n_qubits() != prep2.n_qubits())
    throw RegisterMismatch("swap_test: preparations act on different register sizes");
  const int n = prep1.n_qubits();
  const int io = 2 * n + 1;
  const int a1 = prep1.n_ancilla();
  std::vector<Instruction> ops;
  for (const auto& ins : prep1.instructions())
    ops.push_back(detail::remapped(ins, [&](int x) { return x < n ? 1 + x : io + (x - n); }, 0));
  const int slots1 = prep1.slot_count();
  for (const auto& ins : prep2.instructions())
    ops.push_back(detail::remapped(ins, [&](int x) { return x < n ? n + 1 + x : io + a1 + (x - n); },
                                   slots1));
  const int result_slot = slots1 + prep2.slot_count();
  ops.emplace_back(GateOp{Gate::H, {}, {0}, {}});
  for (int i = 0; i < n; ++i) {
    const int a = 1 + i, b = n + 1 + i;
    ops.emplace_back(GateOp{Gate::CNOT, {}, {a, b}, {0}});
    ops.emplace_back(GateOp{Gate::CNOT, {}, {b, a}, {0}});
    ops.emplace_back(GateOp{Gate::CNOT, {}, {a, b}, {0}});
  }
  ops.emplace_back(GateOp{Gate::H, {}, {0}, {}});
  ops.emplace_back(MeasureOp{{0}, result_slot});
  return Program("SwapTest(" + prep1.name() + "," + prep2.name() + ")", io,
                 a1 + prep2.n_ancilla(), std::move(ops));
}

/// tr(rho1 rho2) for the I/O reductions of two full-register pure states.
inline double reduced_overlap(std::span<const Complex> psi1, int anc1, std::span<const Complex> psi2,
                              int anc2) {
  const std::size_t d1 = dim_of(anc1), d2 = dim_of(anc2);
  const std::size_t dio = psi1.size() / d1;
  double acc = 0.0;
  for (std::size_t c1 = 0; c1 < d1; ++c1) {
    for (std::size_t c2 = 0; c2 < d2; ++c2) {
      Complex ip = 0.0;
      for (std::size_t x = 0; x < dio; ++x) ip += std::conj(psi1[x * d1 + c1]) * psi2[x * d2 + c2];
      acc += std::norm(ip);
    }
  }
  return acc;
}

/// Pr['1'] = (1 - overlap) / 2, with values at or below the branch cutoff
/// treated as exactly zero.
inline double swap_one_probability(double overlap) {
  const double p = 0.5 * (1.0 - overlap);
  return p <= kBranchCutoff ? 0.0 : std::min(p, 1.0);
}

/// A Swap Test on two fixed preparations, compiled once and run many times.
class SwapTester {
 public:
  SwapTester(const Program& prep1, const Program& prep2, ShotEngine engine = ShotEngine::Factored)
      : engine_(engine) {
    if (prep1.n_qubits() != prep2.n_qubits())
      throw RegisterMismatch("swap_test: preparations act on different register sizes (" +
                             std::to_string(prep1.n_qubits()) + " vs " +
                             std::to_string(prep2.n_qubits()) + ")");
    if (engine == ShotEngine::FullCircuit) {
      const Program full = swap_test_circuit(prep1, prep2);
      full_ = compile(full);
      result_slot_ = full.slot_count() - 1;
    } else {
      p1_ = compile(prep1);
      p2_ = compile(prep2);
      if (prep1.measurement_free() && prep2.measurement_free()) {
        Rng unused(0);
        fixed_p1_ = swap_one_probability(overlap_of(unused, unused));
      }
    }
  }

  /// Outcome of shot `index` of the stream keyed by `rng`.
  bool shot(const Rng& rng, std::uint64_t index) const {
    Rng r = rng.split(index);
    if (engine_ == ShotEngine::FullCircuit) {
      auto amps = detail::embed_input(full_, zero_input(full_.n_qubits));
      SlotRecord slots;
      run_in_place(full_, amps, r, slots);
      return slots[result_slot_] == 1u;
    }
    double p;
    if (fixed_p1_) {
      p = *fixed_p1_;
    } else {
      Rng r1 = r.split(1), r2 = r.split(2);
      p = swap_one_probability(overlap_of(r1, r2));
    }
    if (p == 0.0) return false;
    Rng ra = r.split(3);
    return ra.uniform() < p;
  }

  SwapTestCount run(std::uint64_t s, const Rng& rng) const {
    if (s < 1) throw DomainError("swap_test: s must be at least 1");
    SwapTestCount c;
    c.rounds = s;
    for (std::uint64_t i = 0; i < s; ++i) c.ones += shot(rng, i) ? 1 : 0;
    return c;
  }

  EarlyExitResult run_until_one(std::uint64_t t, const Rng& rng) const {
    if (t < 1) throw DomainError("is_trab_equals_1: t must be at least 1");
    EarlyExitResult r;
    for (std::uint64_t i = 0; i < t; ++i) {
      ++r.shots;
      if (shot(rng, i)) {
        r.equal = false;
        break;
      }
    }
    return r;
  }

  /// Both preparations are measurement-free, so every shot has the same Pr['1'].
  bool deterministic() const { return fixed_p1_.has_value(); }

 private:
  static std::vector<Complex> zero_input(int n) {
    std::vector<Complex> v(dim_of(n));
    v[0] = 1.0;
    return v;
  }

  double overlap_of(Rng& r1, Rng& r2) const {
    auto a = detail::embed_input(p1_, zero_input(p1_.n_qubits));
    auto b = detail::embed_input(p2_, zero_input(p2_.n_qubits));
    SlotRecord s1, s2;
    run_in_place(p1_, a, r1, s1);
    run_in_place(p2_, b, r2, s2);
    double na = 0.0, nb = 0.0;
    for (const auto& x : a) na += std::norm(x);
    for (const auto& x : b) nb += std::norm(x);
    return reduced_overlap(a, p1_.n_ancilla, b, p2_.n_ancilla) / (na * nb);
  }

  ShotEngine engine_;
  CompiledProgram p1_, p2_, full_;
  int result_slot_ = 0;
  std::optional<double> fixed_p1_;
};

inline SwapTestCount swap_test(int n, std::uint64_t s, const Program& prep1, const Program& prep2,
                               const Rng& rng, ShotEngine engine = ShotEngine::Factored) {
  if (prep1.n_qubits() != n || prep2.n_qubits() != n)
    throw RegisterMismatch("swap_test: preparations do not act on " + std::to_string(n) + " qubits");
  return SwapTester(prep1, prep2, engine).run(s, rng);
}

inline EarlyExitResult is_trab_equals_1(int n, std::uint64_t t, const Program& prep1,
                                        const Program& prep2, const Rng& rng,
                                        ShotEngine engine = ShotEngine::Factored) {
  if (prep1.n_qubits() != n || prep2.n_qubits() != n)
    throw RegisterMismatch("is_trab_equals_1: preparations do not act on " + std::to_string(n) +
                           " qubits");
  return SwapTester(prep1, prep2, engine).run_until_one(t, rng);
}

}  // namespace qbbt
