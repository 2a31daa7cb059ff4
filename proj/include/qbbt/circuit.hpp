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

// Program intermediate representation: a fixed circuit-level program over an
// I/O register plus workspace ancillas, with mid-circuit measurement, reset
// and single-slot classical feedback.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qbbt/kernels.hpp"
#include "qbbt/qnum.hpp"

namespace qbbt {

/// A standard gate on `targets`, additionally controlled on `controls` being |1>.
struct GateOp {
  Gate gate = Gate::I;
  std::vector<double> params;
  std::vector<int> targets;
  std::vector<int> controls;
  friend bool operator==(const GateOp&, const GateOp&) = default;
};

/// Z-basis measurement of `targets`; the outcome (first target = MSB) is stored in `slot`.
struct MeasureOp {
  std::vector<int> targets;
  int slot = 0;
  friend bool operator==(const MeasureOp&, const MeasureOp&) = default;
};

/// Measure-and-flip to |0>; the outcome is discarded.
struct ResetOp {
  std::vector<int> targets;
  friend bool operator==(const ResetOp&, const ResetOp&) = default;
};

/// Applies `inner` iff classical slot `slot` holds `value`.
struct ConditionalOp {
  int slot = 0;
  std::uint64_t value = 0;
  GateOp inner;
  friend bool operator==(const ConditionalOp&, const ConditionalOp&) = default;
};

using Instruction = std::variant<GateOp, MeasureOp, ResetOp, ConditionalOp>;

inline bool is_gate(const Instruction& ins) { return std::holds_alternative<GateOp>(ins); }

class Program {
 public:
  Program(std::string name, int n_qubits, int n_ancilla, std::vector<Instruction> instructions)
      : name_(std::move(name)),
        n_qubits_(n_qubits),
        n_ancilla_(n_ancilla),
        instructions_(std::move(instructions)) {
    validate();
  }

  /// The program with no instructions.
  static Program empty(int n_qubits, std::string name = "Empty") {
    return Program(std::move(name), n_qubits, 0, {});
  }

  const std::string& name() const { return name_; }
  int n_qubits() const { return n_qubits_; }
  int n_ancilla() const { return n_ancilla_; }
  int n_total() const { return n_qubits_ + n_ancilla_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  std::size_t size() const { return instructions_.size(); }

  /// One past the largest classical slot written.
  int slot_count() const {
    int n = 0;
    for (const auto& ins : instructions_)
      if (const auto* m = std::get_if<MeasureOp>(&ins)) n = std::max(n, m->slot + 1);
    return n;
  }

  bool measurement_free() const {
    return std::all_of(instructions_.begin(), instructions_.end(), is_gate);
  }

  Program renamed(std::string name) const {
    Program p = *this;
    p.name_ = std::move(name);
    return p;
  }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  void check_qubits(const std::vector<int>& qs, std::set<int>& seen, const char* what) const {
    for (int q : qs) {
      if (q < 0 || q >= n_total())
        throw DomainError(name_ + ": " + what + " index " + std::to_string(q) + " out of range");
      if (!seen.insert(q).second)
        throw DomainError(name_ + ": qubit " + std::to_string(q) + " used twice in one instruction");
    }
  }

  void check_gate(const GateOp& g) const {
    if (static_cast<int>(g.targets.size()) != gate_arity(g.gate))
      throw DomainError(name_ + ": gate " + std::string(gate_name(g.gate)) + " needs " +
                        std::to_string(gate_arity(g.gate)) + " target(s)");
    if (g.params.size() != gate_param_count(g.gate))
      throw DomainError(name_ + ": wrong parameter count for " + std::string(gate_name(g.gate)));
    for (double p : g.params)
      if (!std::isfinite(p)) throw DomainError(name_ + ": non-finite gate parameter");
    std::set<int> seen;
    check_qubits(g.targets, seen, "target");
    check_qubits(g.controls, seen, "control");
  }

  void validate() const {
    if (n_qubits_ < 1 || n_ancilla_ < 0)
      throw DomainError(name_ + ": invalid register sizes");
    if (n_total() > kMaxQubits) throw DimensionError(name_ + ": too many qubits");
    std::set<int> written;
    for (const auto& ins : instructions_) {
      std::visit(
          [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, GateOp>) {
              check_gate(op);
            } else if constexpr (std::is_same_v<T, MeasureOp>) {
              if (op.targets.empty() || op.targets.size() > 63)
                throw DomainError(name_ + ": measurement needs 1..63 targets");
              if (op.slot < 0) throw DomainError(name_ + ": negative classical slot");
              std::set<int> seen;
              check_qubits(op.targets, seen, "measure");
              written.insert(op.slot);
            } else if constexpr (std::is_same_v<T, ResetOp>) {
              if (op.targets.empty()) throw DomainError(name_ + ": reset needs targets");
              std::set<int> seen;
              check_qubits(op.targets, seen, "reset");
            } else {
              if (!written.contains(op.slot))
                throw DomainError(name_ + ": slot " + std::to_string(op.slot) +
                                  " read before any measurement writes it");
              check_gate(op.inner);
            }
          },
          ins);
    }
  }

  std::string name_;
  int n_qubits_;
  int n_ancilla_;
  std::vector<Instruction> instructions_;
};

/// Fluent construction of programs.
class ProgramBuilder {
 public:
  ProgramBuilder(std::string name, int n_qubits, int n_ancilla = 0)
      : name_(std::move(name)), n_qubits_(n_qubits), n_ancilla_(n_ancilla) {}

  ProgramBuilder& gate(Gate g, std::vector<int> targets, std::vector<double> params = {},
                       std::vector<int> controls = {}) {
    ops_.emplace_back(GateOp{g, std::move(params), std::move(targets), std::move(controls)});
    return *this;
  }
  ProgramBuilder& x(int q) { return gate(Gate::X, {q}); }
  ProgramBuilder& y(int q) { return gate(Gate::Y, {q}); }
  ProgramBuilder& z(int q) { return gate(Gate::Z, {q}); }
  ProgramBuilder& h(int q) { return gate(Gate::H, {q}); }
  ProgramBuilder& s(int q) { return gate(Gate::S, {q}); }
  ProgramBuilder& sdg(int q) { return gate(Gate::Sdg, {q}); }
  ProgramBuilder& t(int q) { return gate(Gate::T, {q}); }
  ProgramBuilder& cx(int c, int t) { return gate(Gate::CNOT, {c, t}); }
  ProgramBuilder& cz(int a, int b) { return gate(Gate::CZ, {a, b}); }
  ProgramBuilder& swap(int a, int b) { return gate(Gate::SWAP, {a, b}); }
  ProgramBuilder& cphase(int c, int t, double lambda) {
    return gate(Gate::Phase, {t}, {lambda}, {c});
  }
  ProgramBuilder& measure(std::vector<int> targets, int slot) {
    ops_.emplace_back(MeasureOp{std::move(targets), slot});
    return *this;
  }
  ProgramBuilder& reset(std::vector<int> targets) {
    ops_.emplace_back(ResetOp{std::move(targets)});
    return *this;
  }
  ProgramBuilder& c_if(int slot, std::uint64_t value, Gate g, std::vector<int> targets,
                       std::vector<double> params = {}) {
    ops_.emplace_back(ConditionalOp{slot, value, GateOp{g, std::move(params), std::move(targets), {}}});
    return *this;
  }
  ProgramBuilder& append(Instruction ins) {
    ops_.push_back(std::move(ins));
    return *this;
  }

  Program build() const { return Program(name_, n_qubits_, n_ancilla_, ops_); }

 private:
  std::string name_;
  int n_qubits_;
  int n_ancilla_;
  std::vector<Instruction> ops_;
};

namespace detail {

/// Relabels qubits through `q` and shifts classical slots by `slot_offset`.
inline Instruction remapped(const Instruction& ins, const std::function<int(int)>& q, int slot_offset) {
  auto gate = [&](GateOp g) {
    for (int& t : g.targets) t = q(t);
    for (int& c : g.controls) c = q(c);
    return g;
  };
  return std::visit(
      [&](const auto& op) -> Instruction {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, GateOp>) {
          return gate(op);
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          MeasureOp m = op;
          for (int& t : m.targets) t = q(t);
          m.slot += slot_offset;
          return m;
        } else if constexpr (std::is_same_v<T, ResetOp>) {
          ResetOp r = op;
          for (int& t : r.targets) t = q(t);
          return r;
        } else {
          ConditionalOp c = op;
          c.slot += slot_offset;
          c.inner = gate(c.inner);
          return c;
        }
      },
      ins);
}

}  // namespace detail

/// Runs `first` and then `second` on the same I/O register. Ancillas and
/// classical slots of `second` are renumbered after those of `first`.
inline Program compose(const Program& first, const Program& second) {
  if (first.n_qubits() != second.n_qubits())
    throw RegisterMismatch("compose: register sizes differ (" + std::to_string(first.n_qubits()) +
                           " vs " + std::to_string(second.n_qubits()) + ")");
  std::vector<Instruction> ops = first.instructions();
  const int slot_offset = first.slot_count();
  for (const auto& ins : second.instructions())
    ops.push_back(detail::remapped(
        ins, [&](int q) { return q < first.n_qubits() ? q : q + first.n_ancilla(); }, slot_offset));
  return Program(first.name() + ";" + second.name(), first.n_qubits(),
                 first.n_ancilla() + second.n_ancilla(), std::move(ops));
}

/// Reversed gate list with each gate replaced by its inverse.
inline Program inverse(const Program& p) {
  std::vector<Instruction> ops;
  ops.reserve(p.size());
  for (auto it = p.instructions().rbegin(); it != p.instructions().rend(); ++it) {
    const auto* g = std::get_if<GateOp>(&*it);
    if (!g) throw NotInvertible(p.name() + ": contains a non-unitary instruction");
    auto [inv, params] = gate_inverse(g->gate, g->params);
    ops.emplace_back(GateOp{inv, std::move(params), g->targets, g->controls});
  }
  return Program("inv(" + p.name() + ")", p.n_qubits(), p.n_ancilla(), std::move(ops));
}

/// Binds a gate instruction to the bit layout of an `n_total`-qubit register.
inline kernels::CompiledGate compile_gate(const GateOp& g, int n_total) {
  std::uint64_t controls = 0;
  for (int c : g.controls) controls |= qubit_mask(c, n_total);
  const std::uint64_t t0 = qubit_mask(g.targets[0], n_total);
  const std::uint64_t t1 = g.targets.size() > 1 ? qubit_mask(g.targets[1], n_total) : 0;
  return kernels::bind(std_gate(g.gate, g.params), t0, t1, controls);
}

inline constexpr int kUnitaryMaxQubits = 12;

/// The full 2^n unitary of a measurement-free, ancilla-free program.
inline CMatrix to_unitary(const Program& p) {
  if (!p.measurement_free()) throw DomainError(p.name() + ": to_unitary needs a measurement-free program");
  if (p.n_ancilla() != 0) throw DomainError(p.name() + ": to_unitary needs an ancilla-free program");
  if (p.n_total() > kUnitaryMaxQubits) throw DimensionError(p.name() + ": too wide for to_unitary");
  const std::size_t d = dim_of(p.n_total());
  // Column-major scratch: column j holds U|j>.
  std::vector<Complex> cols(d * d);
  for (std::size_t j = 0; j < d; ++j) cols[j * d + j] = 1.0;
  for (const auto& ins : p.instructions()) {
    const auto cg = compile_gate(std::get<GateOp>(ins), p.n_total());
    for (std::size_t j = 0; j < d; ++j) kernels::apply(cg, cols.data() + j * d, d);
  }
  CMatrix u(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(i, j) = cols[j * d + i];
  return u;
}

}  // namespace qbbt
