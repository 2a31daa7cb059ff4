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

// Preparation programs for the three input families: Pauli product states,
// computational basis states and two-term superpositions.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbbt/circuit.hpp"
#include "qbbt/rng.hpp"

namespace qbbt {

/// One digit per qubit: 0 |0>, 1 |1>, 2 |+>, 3 |->, 4 |+i>, 5 |-i>.
using PauliIndex = std::vector<int>;

inline std::string to_string(const PauliIndex& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

inline PauliIndex random_pauli_index(int n, Rng& rng) {
  PauliIndex k(n);
  for (auto& digit : k) digit = static_cast<int>(rng.uniform_int(6));
  return k;
}

inline Program pauli_prep(const PauliIndex& k) {
  if (k.empty()) throw DomainError("pauli_prep: empty index");
  ProgramBuilder b("G" + to_string(k), static_cast<int>(k.size()));
  for (int q = 0; q < static_cast<int>(k.size()); ++q) {
    switch (k[q]) {
      case 0: break;
      case 1: b.x(q); break;
      case 2: b.h(q); break;
      case 3: b.x(q).h(q); break;
      case 4: b.h(q).s(q); break;
      case 5: b.h(q).sdg(q); break;
      default: throw DomainError("pauli_prep: digit " + std::to_string(k[q]) + " outside 0..5");
    }
  }
  return b.build();
}

inline Program pauli_prep_inverse(const PauliIndex& k) {
  return inverse(pauli_prep(k)).renamed("invG" + to_string(k));
}

inline Program basis_prep(int n, std::uint64_t m) {
  if (n < 1 || m >= dim_of(n)) throw DomainError("basis_prep: index out of range");
  ProgramBuilder b("C" + std::to_string(m), n);
  for (int q = 0; q < n; ++q)
    if (m & qubit_mask(q, n)) b.x(q);
  return b.build();
}

/// Prepares (|m> + sign |m2>)/sqrt(2).
inline Program superpos_prep(int n, std::uint64_t m, std::uint64_t m2, int sign) {
  if (n < 1 || m >= dim_of(n) || m2 >= dim_of(n)) throw DomainError("superpos_prep: index out of range");
  if (m == m2) throw DomainError("superpos_prep: indices must differ");
  if (sign != 1 && sign != -1) throw DomainError("superpos_prep: sign must be +1 or -1");
  ProgramBuilder b(std::string(sign > 0 ? "S+" : "S-") + "(" + std::to_string(m) + "," +
                       std::to_string(m2) + ")",
                   n);
  const std::uint64_t diff = m ^ m2;
  for (int q = 0; q < n; ++q)
    if ((m & m2) & qubit_mask(q, n)) b.x(q);
  int pivot = -1;
  for (int q = 0; q < n; ++q) {
    if (!(diff & qubit_mask(q, n))) continue;
    if (pivot < 0) {
      pivot = q;
      b.h(q);
      if (sign < 0) b.z(q);
    } else {
      b.cx(pivot, q);
    }
  }
  // (|0..0> + sign |1..1>)/sqrt(2) on the differing bits; map 0..0 to m.
  for (int q = 0; q < n; ++q)
    if ((diff & m) & qubit_mask(q, n)) b.x(q);
  return b.build();
}

}  // namespace qbbt
