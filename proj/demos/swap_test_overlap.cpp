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


// Estimates tr(rho1 rho2) with the Swap Test for a few preparation pairs and
// compares against the exact overlap.

#include <cstdio>

#include "qbbt/qbbt.hpp"

int main() {
  using namespace qbbt;
  const Program mixed = ProgramBuilder("mixed", 1).h(0).measure({0}, 0).build();
  const std::pair<Program, Program> pairs[] = {
      {pauli_prep({0}), pauli_prep({0})},
      {pauli_prep({0}), pauli_prep({2})},
      {pauli_prep({2}), pauli_prep({4})},
      {pauli_prep({0}), pauli_prep({1})},
      {mixed, mixed},
      {mixed, pauli_prep({2})},
  };
  const std::uint64_t s = 4000;
  const auto zero = StateVector::basis(1, 0);
  std::printf("%-10s %-10s %10s %10s %12s\n", "prep1", "prep2", "exact", "factored", "full-circuit");
  for (std::size_t i = 0; i < std::size(pairs); ++i) {
    const auto& [a, b] = pairs[i];
    const double exact = overlap(exact_output(a, zero), exact_output(b, zero));
    const auto f = swap_test(1, s, a, b, Rng(1).split(i), ShotEngine::Factored);
    const auto c = swap_test(1, s, a, b, Rng(1).split(i), ShotEngine::FullCircuit);
    std::printf("%-10s %-10s %10.4f %10.4f %12.4f\n", a.name().c_str(), b.name().c_str(), exact,
                f.overlap_estimate(), c.overlap_estimate());
  }
}
