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

// Benchmark factory: the original programs, single-edit mutation operators,
// and the labelled 63-entry suite.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qbbt/checkers.hpp"
#include "qbbt/circuit.hpp"
#include "qbbt/oracle.hpp"
#include "qbbt/params.hpp"

namespace qbbt {

inline const std::vector<std::string>& original_names() {
  static const std::vector<std::string> names = {"Cir1A", "Cir1B",  "Cir2A", "Cir2B",
                                                 "Empty", "TeleportABA", "QFT", "invQFT",
                                                 "QPE",   "invQPE", "CRot",  "Reset"};
  return names;
}

namespace programs {

inline constexpr double kPi = std::numbers::pi;

inline Program cir1a() {
  return ProgramBuilder("Cir1A", 2).h(0).h(1).cx(0, 1).h(0).h(1).build();
}

inline Program cir1b() { return ProgramBuilder("Cir1B", 2).cx(1, 0).build(); }

inline Program cir2a() {
  return ProgramBuilder("Cir2A", 3).cx(1, 2).cx(0, 1).measure({0}, 0).t(1).build();
}

inline Program cir2b() {
  return ProgramBuilder("Cir2B", 3).cx(1, 2).measure({0}, 0).c_if(0, 1, Gate::X, {1}).t(1).build();
}

inline Program empty(int n = 6) { return Program::empty(n, "Empty"); }

/// A -> B through the shared pair (C, B), then B -> A through (C, A).
/// I/O qubit 0 is A; ancillas 1 and 2 are B and C.
inline Program teleport_aba() {
  constexpr int A = 0, B = 1, C = 2;
  ProgramBuilder b("TeleportABA", 1, 2);
  b.h(C).cx(C, B).cx(A, C).h(A).measure({A}, 0).measure({C}, 1);
  b.c_if(1, 1, Gate::X, {B}).c_if(0, 1, Gate::Z, {B});
  b.reset({A}).reset({C});
  b.h(C).cx(C, A).cx(B, C).h(B).measure({B}, 2).measure({C}, 3);
  b.c_if(3, 1, Gate::X, {A}).c_if(2, 1, Gate::Z, {A});
  b.reset({B}).reset({C});
  return b.build();
}

/// QFT on qubits [first, first + width) of an n-qubit register, qubit
/// `first` most significant.
inline void append_qft(ProgramBuilder& b, int first, int width) {
  for (int j = 0; j < width; ++j) {
    b.h(first + j);
    for (int l = j + 1; l < width; ++l) b.cphase(first + l, first + j, kPi / std::pow(2.0, l - j));
  }
  for (int j = 0; j < width / 2; ++j) b.swap(first + j, first + width - 1 - j);
}

inline Program qft(int n = 5) {
  ProgramBuilder b("QFT", n);
  append_qft(b, 0, n);
  return b.build();
}

inline Program inv_qft(int n = 5) { return inverse(qft(n)).renamed("invQFT"); }

/// Phase estimation of U = SH with counting qubits 0..3 and eigen qubit 4.
inline Program qpe() {
  constexpr int counting = 4, eigen = 4;
  ProgramBuilder b("QPE", counting + 1);
  for (int q = 0; q < counting; ++q) b.h(q);
  for (int q = 0; q < counting; ++q) {
    const int reps = 1 << (counting - 1 - q);
    for (int r = 0; r < reps; ++r) {
      b.gate(Gate::H, {eigen}, {}, {q});
      b.gate(Gate::S, {eigen}, {}, {q});
    }
  }
  ProgramBuilder f("QFT4", counting);
  append_qft(f, 0, counting);
  const Program inv_qft4 = inverse(f.build());
  for (const auto& ins : inv_qft4.instructions()) b.append(ins);
  return b.build();
}

inline Program inv_qpe() { return inverse(qpe()).renamed("invQPE"); }

/// |l>|0> -> |l>(sqrt(1 - 1/l^2)|0> + (1/l)|1>) for l = 1..15; l = 0 is left
/// unchanged. Register qubits 0..3 hold l (qubit 0 most significant).
inline Program crot() {
  constexpr int width = 4, target = 4;
  ProgramBuilder b("CRot", width + 1);
  const std::vector<int> controls = {0, 1, 2, 3};
  for (int l = 1; l < (1 << width); ++l) {
    std::vector<int> zeros;
    for (int q = 0; q < width; ++q)
      if (!(l & (1 << (width - 1 - q)))) zeros.push_back(q);
    for (int q : zeros) b.x(q);
    b.gate(Gate::Ry, {target}, {2.0 * std::asin(1.0 / l)}, controls);
    for (int q : zeros) b.x(q);
  }
  return b.build();
}

inline Program reset(int n = 6) {
  ProgramBuilder b("Reset", n);
  for (int q = 0; q < n; ++q) b.measure({q}, q).c_if(q, 1, Gate::X, {q});
  return b.build();
}

}  // namespace programs

inline Program build_original(std::string_view name) {
  if (name == "Cir1A") return programs::cir1a();
  if (name == "Cir1B") return programs::cir1b();
  if (name == "Cir2A") return programs::cir2a();
  if (name == "Cir2B") return programs::cir2b();
  if (name == "Empty") return programs::empty();
  if (name == "TeleportABA") return programs::teleport_aba();
  if (name == "QFT") return programs::qft();
  if (name == "invQFT") return programs::inv_qft();
  if (name == "QPE") return programs::qpe();
  if (name == "invQPE") return programs::inv_qpe();
  if (name == "CRot") return programs::crot();
  if (name == "Reset") return programs::reset();
  throw DomainError("unknown original program '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Mutation

enum class MutationKind { GMAdd, GMRemove, GMReplace, MMAdd, MMRemove };

inline std::string_view mutation_kind_name(MutationKind k) {
  switch (k) {
    case MutationKind::GMAdd: return "GM-add";
    case MutationKind::GMRemove: return "GM-remove";
    case MutationKind::GMReplace: return "GM-replace";
    case MutationKind::MMAdd: return "MM-add";
    case MutationKind::MMRemove: return "MM-remove";
  }
  return "?";
}

struct MutationOp {
  MutationKind kind;
  std::size_t position;
  std::optional<Instruction> detail;  // the inserted or replacing instruction
};

inline std::string describe(const Instruction& ins) {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        auto qubits = [](const std::vector<int>& qs) {
          std::string s;
          for (std::size_t i = 0; i < qs.size(); ++i) s += (i ? "," : "") + std::to_string(qs[i]);
          return s;
        };
        if constexpr (std::is_same_v<T, GateOp>) {
          std::string s(gate_name(op.gate));
          if (!op.params.empty()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "(%.6g)", op.params[0]);
            s += buf;
          }
          if (!op.controls.empty()) s = "c" + qubits(op.controls) + "-" + s;
          return s + " q" + qubits(op.targets);
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          return "M q" + qubits(op.targets) + "->c" + std::to_string(op.slot);
        } else if constexpr (std::is_same_v<T, ResetOp>) {
          return "Reset q" + qubits(op.targets);
        } else {
          return "if c" + std::to_string(op.slot) + "==" + std::to_string(op.value) + " " +
                 std::string(gate_name(op.inner.gate)) + " q" + qubits(op.inner.targets);
        }
      },
      ins);
}

inline std::string describe(const MutationOp& op) {
  std::string s = std::string(mutation_kind_name(op.kind)) + "@" + std::to_string(op.position);
  if (op.detail) s += ":" + describe(*op.detail);
  return s;
}

inline Program mutate(const Program& p, const MutationOp& op) {
  auto ops = p.instructions();
  const std::size_t len = ops.size();
  const bool insert = op.kind == MutationKind::GMAdd || op.kind == MutationKind::MMAdd;
  if (op.position > len || (!insert && op.position == len))
    throw DomainError("mutate: position " + std::to_string(op.position) + " outside " + p.name());
  auto need_detail = [&](auto pred, const char* what) {
    if (!op.detail || !pred(*op.detail)) throw DomainError(std::string("mutate: ") + what);
  };
  auto is_gateish = [](const Instruction& i) {
    return std::holds_alternative<GateOp>(i) || std::holds_alternative<ConditionalOp>(i);
  };
  auto is_measure = [](const Instruction& i) { return std::holds_alternative<MeasureOp>(i); };
  switch (op.kind) {
    case MutationKind::GMAdd:
      need_detail(is_gateish, "GM-add needs a gate");
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(op.position), *op.detail);
      break;
    case MutationKind::GMRemove:
      if (!is_gateish(ops[op.position])) throw DomainError("mutate: GM-remove target is not a gate");
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(op.position));
      break;
    case MutationKind::GMReplace:
      need_detail(is_gateish, "GM-replace needs a gate");
      if (!is_gateish(ops[op.position])) throw DomainError("mutate: GM-replace target is not a gate");
      ops[op.position] = *op.detail;
      break;
    case MutationKind::MMAdd:
      need_detail(is_measure, "MM-add needs a measurement");
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(op.position), *op.detail);
      break;
    case MutationKind::MMRemove:
      if (!is_measure(ops[op.position])) throw DomainError("mutate: MM-remove target is not a measurement");
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(op.position));
      break;
  }
  return Program(p.name() + "[" + describe(op) + "]", p.n_qubits(), p.n_ancilla(), std::move(ops));
}

inline Program mutate(const Program& p, const std::vector<MutationOp>& edits) {
  Program out = p;
  for (const auto& e : edits) out = mutate(out, e);
  return out;
}

// ---------------------------------------------------------------------------
// Suite

struct BenchmarkEntry {
  std::string id;
  Task task;
  Outcome expected;
  Program p1;
  std::optional<Program> p2;
  /// Mutants with a dotted id are fixed choices of this suite.
  bool frozen = false;
  std::string note;

  int n_qubits() const { return p1.n_qubits(); }
};

namespace detail {

inline GateOp g(Gate gate, std::vector<int> targets, std::vector<double> params = {},
                std::vector<int> controls = {}) {
  return GateOp{gate, std::move(params), std::move(targets), std::move(controls)};
}

inline MutationOp add(std::size_t pos, Instruction ins) {
  const bool m = std::holds_alternative<MeasureOp>(ins);
  return {m ? MutationKind::MMAdd : MutationKind::GMAdd, pos, std::move(ins)};
}
inline MutationOp remove(std::size_t pos) { return {MutationKind::GMRemove, pos, std::nullopt}; }
inline MutationOp replace(std::size_t pos, Instruction ins) {
  return {MutationKind::GMReplace, pos, std::move(ins)};
}

/// Moves the instruction at `from` so that it lands at index `to`.
inline std::vector<MutationOp> move_op(const Program& p, std::size_t from, std::size_t to) {
  const Instruction ins = p.instructions().at(from);
  return {remove(from), add(to, ins)};
}

struct MutantSpec {
  std::vector<MutationOp> edits;
  std::string note;
};

inline std::string edits_note(const std::vector<MutationOp>& edits) {
  std::string s;
  for (const auto& e : edits) s += (s.empty() ? "" : "; ") + describe(e);
  return s;
}

inline std::vector<std::vector<MutationOp>> cir1a_mutants() {
  return {
      {remove(0)},
      {replace(2, g(Gate::CNOT, {1, 0}))},
      {add(5, g(Gate::X, {0}))},
      {replace(4, g(Gate::Z, {1}))},
      {add(0, g(Gate::Z, {0}))},
  };
}

inline std::vector<std::vector<MutationOp>> cir2a_mutants(const Program& a) {
  return {
      {replace(0, g(Gate::CNOT, {2, 1}))},
      move_op(a, 1, 3),
  };
}

inline std::vector<std::vector<MutationOp>> cir2b_mutants(const Program& b) {
  return {
      move_op(b, 2, 3),
      {replace(3, g(Gate::T, {2}))},
      {replace(2, ConditionalOp{0, 1, g(Gate::Z, {1})})},
  };
}

inline std::vector<std::vector<MutationOp>> qft_gm_mutants() {
  return {
      {remove(0)},
      {replace(13, g(Gate::CNOT, {4, 3}))},
      {add(17, g(Gate::X, {2}))},
      {remove(16)},
      {replace(9, g(Gate::X, {2}))},
  };
}

inline std::vector<std::vector<MutationOp>> inv_qft_mutants() {
  constexpr double kPi = programs::kPi;
  return {
      {remove(2)},
      {replace(3, g(Gate::Phase, {3}, {kPi / 2}, {4}))},
      {add(17, g(Gate::X, {0}))},
      {remove(0)},
      {add(8, g(Gate::H, {2}))},
  };
}

inline std::vector<std::vector<MutationOp>> inv_qpe_mutants(const Program& inv) {
  const std::size_t len = inv.size();
  return {
      {remove(0)},
      {add(len, g(Gate::X, {4}))},
      {replace(len - 1, g(Gate::X, {0}))},
      {remove(len - 5)},
      {add(len / 2, g(Gate::Z, {4}))},
  };
}

inline std::vector<std::vector<MutationOp>> teleport_mutants() {
  return {
      {remove(6)},
      {remove(7)},
      {remove(3)},
      {replace(11, g(Gate::CZ, {2, 0}))},
      {add(20, g(Gate::S, {0}))},
  };
}

inline std::vector<std::vector<MutationOp>> qft_unitary_gm_mutants() {
  return {
      {remove(4)},
      {replace(5, g(Gate::X, {1}))},
      {add(10, g(Gate::T, {3}))},
  };
}

inline std::vector<std::vector<MutationOp>> qft_mm_mutants() {
  return {
      {add(0, MeasureOp{{0}, 0})},
      {add(12, MeasureOp{{3}, 0})},
      {add(17, MeasureOp{{0}, 0})},
      {add(5, MeasureOp{{1}, 0})},
      {add(9, MeasureOp{{2}, 0})},
  };
}

inline std::vector<std::vector<MutationOp>> crot_mm_mutants(const Program& c) {
  return {
      {add(0, MeasureOp{{0}, 0})},
      {add(c.size() / 2, MeasureOp{{2}, 0})},
  };
}

/// Checks a suite label against the exact oracle.
inline void verify_entry(const BenchmarkEntry& e) {
  bool truth = false;
  switch (e.task) {
    case Task::EQ: truth = exact_equivalent(e.p1, *e.p2); break;
    case Task::ID: truth = exact_equivalent(e.p1, Program::empty(e.p1.n_qubits())); break;
    case Task::UN: truth = exact_unitary(e.p1); break;
  }
  if (truth != (e.expected == Outcome::Pass))
    throw ConsistencyError("suite entry " + e.id + " (" + std::string(task_name(e.task)) +
                           ") contradicts the exact oracle");
}

}  // namespace detail

/// The 63 labelled entries. With `verify`, every label is checked against the
/// exact oracle and a contradiction throws ConsistencyError.
inline std::vector<BenchmarkEntry> suite(bool verify = true) {
  using detail::edits_note;
  namespace pr = programs;
  std::vector<BenchmarkEntry> out;
  auto push = [&](std::string id, Task task, Outcome expected, Program p1, std::optional<Program> p2,
                  bool frozen = false, std::string note = {}) {
    out.push_back(BenchmarkEntry{std::move(id), task, expected, std::move(p1), std::move(p2), frozen,
                                 std::move(note)});
  };
  const auto P = Outcome::Pass, F = Outcome::Fail;
  const Program cir1a = pr::cir1a(), cir1b = pr::cir1b(), cir2a = pr::cir2a(), cir2b = pr::cir2b();
  const Program qft = pr::qft(), inv_qft = pr::inv_qft(), qpe = pr::qpe(), inv_qpe = pr::inv_qpe();
  const Program tele = pr::teleport_aba(), crot = pr::crot();

  push("1", Task::EQ, P, cir1a, cir1b);
  push("2", Task::EQ, P, cir2a, cir2b);
  push("3", Task::EQ, P, qft, qft);
  push("4", Task::EQ, P, compose(qft, inv_qft), pr::empty(5));
  {
    const auto m = detail::cir1a_mutants();
    for (std::size_t i = 0; i < m.size(); ++i)
      push("5." + std::to_string(i + 1), Task::EQ, F, mutate(cir1a, m[i]), cir1b, true, edits_note(m[i]));
  }
  {
    const auto m = detail::cir2a_mutants(cir2a);
    for (std::size_t i = 0; i < m.size(); ++i)
      push("6." + std::to_string(i + 1), Task::EQ, F, mutate(cir2a, m[i]), cir2b, true, edits_note(m[i]));
  }
  {
    const auto m = detail::cir2b_mutants(cir2b);
    for (std::size_t i = 0; i < m.size(); ++i)
      push("7." + std::to_string(i + 1), Task::EQ, F, cir2a, mutate(cir2b, m[i]), true, edits_note(m[i]));
  }
  {
    const auto m = detail::qft_gm_mutants();
    for (std::size_t i = 0; i < m.size(); ++i)
      push("8." + std::to_string(i + 1), Task::EQ, F, mutate(qft, m[i]), qft, true, edits_note(m[i]));
  }
  const auto inv_qft_m = detail::inv_qft_mutants();
  for (std::size_t i = 0; i < inv_qft_m.size(); ++i)
    push("9." + std::to_string(i + 1), Task::EQ, F, compose(qft, mutate(inv_qft, inv_qft_m[i])),
         pr::empty(5), true, edits_note(inv_qft_m[i]));

  push("10", Task::ID, P, pr::empty(), std::nullopt);
  push("11", Task::ID, P, compose(qft, inv_qft), std::nullopt);
  push("12", Task::ID, P, compose(qpe, inv_qpe), std::nullopt);
  push("13", Task::ID, P, tele, std::nullopt);
  push("14.1", Task::ID, F, mutate(pr::empty(2), {detail::add(0, detail::g(Gate::S, {0}))}),
       std::nullopt, true, "Empty(2) with S on q0");
  push("14.2", Task::ID, F, mutate(pr::empty(2), {detail::add(0, detail::g(Gate::T, {1}))}),
       std::nullopt, true, "Empty(2) with T on q1");
  for (std::size_t i = 0; i < inv_qft_m.size(); ++i)
    push("15." + std::to_string(i + 1), Task::ID, F, compose(qft, mutate(inv_qft, inv_qft_m[i])),
         std::nullopt, true, edits_note(inv_qft_m[i]));
  {
    const auto m = detail::inv_qpe_mutants(inv_qpe);
    for (std::size_t i = 0; i < m.size(); ++i)
      push("16." + std::to_string(i + 1), Task::ID, F, compose(qpe, mutate(inv_qpe, m[i])), std::nullopt,
           true, edits_note(m[i]));
  }
  {
    const auto m = detail::teleport_mutants();
    for (std::size_t i = 0; i < m.size(); ++i)
      push("17." + std::to_string(i + 1), Task::ID, F, mutate(tele, m[i]), std::nullopt, true,
           edits_note(m[i]));
  }

  push("18", Task::UN, P, cir1a, std::nullopt);
  push("19", Task::UN, P, cir1b, std::nullopt);
  push("20", Task::UN, P, pr::empty(), std::nullopt);
  push("21", Task::UN, P, qft, std::nullopt);
  push("22", Task::UN, P, crot, std::nullopt);
  {
    const auto m = detail::qft_unitary_gm_mutants();
    for (std::size_t i = 0; i < m.size(); ++i)
      push("23." + std::to_string(i + 1), Task::UN, P, mutate(qft, m[i]), std::nullopt, true,
           edits_note(m[i]));
  }
  push("24", Task::UN, F, cir2a, std::nullopt);
  push("25", Task::UN, F, cir2b, std::nullopt);
  push("26", Task::UN, F, pr::reset(), std::nullopt);
  {
    const auto m = detail::qft_mm_mutants();
    for (std::size_t i = 0; i < m.size(); ++i)
      push("27." + std::to_string(i + 1), Task::UN, F, mutate(qft, m[i]), std::nullopt, true,
           edits_note(m[i]));
  }
  {
    const auto m = detail::crot_mm_mutants(crot);
    for (std::size_t i = 0; i < m.size(); ++i)
      push("28." + std::to_string(i + 1), Task::UN, F, mutate(crot, m[i]), std::nullopt, true,
           edits_note(m[i]));
  }
  if (verify)
    for (const auto& e : out) detail::verify_entry(e);
  return out;
}

inline const BenchmarkEntry& find_entry(const std::vector<BenchmarkEntry>& s, std::string_view id) {
  for (const auto& e : s)
    if (e.id == id) return e;
  throw DomainError("no suite entry '" + std::string(id) + "'");
}

}  // namespace qbbt
