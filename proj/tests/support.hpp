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

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "qbbt/qbbt.hpp"

namespace qbbt::testing {

/// Random program over {X,Y,Z,H,S,T,Rx,Ry,Rz,CNOT,CZ,SWAP}. With
/// `measurements`, each slot is a measurement or reset with probability 1/5
/// and later instructions may be conditioned on earlier outcomes.
inline Program random_program(int n, int length, Rng& rng, bool measurements,
                              const std::string& name = "rand") {
  static constexpr Gate one[] = {Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::S, Gate::T,
                                 Gate::Rx, Gate::Ry, Gate::Rz};
  static constexpr Gate two[] = {Gate::CNOT, Gate::CZ, Gate::SWAP};
  std::vector<Instruction> ops;
  int slots = 0;
  auto pick_gate = [&]() {
    GateOp g;
    if (n >= 2 && rng.uniform() < 0.35) {
      g.gate = two[rng.uniform_int(3)];
      const int a = static_cast<int>(rng.uniform_int(n));
      int b = static_cast<int>(rng.uniform_int(n - 1));
      if (b >= a) ++b;
      g.targets = {a, b};
    } else {
      g.gate = one[rng.uniform_int(9)];
      g.targets = {static_cast<int>(rng.uniform_int(n))};
      if (gate_param_count(g.gate) == 1) g.params = {(rng.uniform() - 0.5) * 2.0 * std::numbers::pi};
    }
    return g;
  };
  for (int i = 0; i < length; ++i) {
    const double u = measurements ? rng.uniform() : 1.0;
    const int q = static_cast<int>(rng.uniform_int(n));
    if (u < 0.12) {
      ops.emplace_back(MeasureOp{{q}, slots++});
    } else if (u < 0.2) {
      ops.emplace_back(ResetOp{{q}});
    } else if (u < 0.3 && slots > 0) {
      GateOp g = pick_gate();
      g.controls.clear();
      ops.emplace_back(ConditionalOp{static_cast<int>(rng.uniform_int(slots)), 1, g});
    } else {
      ops.emplace_back(pick_gate());
    }
  }
  return Program(name, n, 0, std::move(ops));
}

/// Random pure state on n qubits.
inline StateVector random_state(int n, Rng& rng) {
  std::vector<Complex> amps(dim_of(n));
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(n, std::move(amps));
}

/// Random mixed state: a convex mix of three random pure states.
inline DensityMatrix random_density(int n, Rng& rng) {
  CMatrix m(dim_of(n), dim_of(n));
  double w_total = 0.0;
  std::vector<double> w(3);
  for (auto& x : w) w_total += (x = rng.uniform() + 0.1);
  for (int j = 0; j < 3; ++j) {
    CMatrix p = DensityMatrix::from_pure(random_state(n, rng)).matrix();
    p *= w[j] / w_total;
    m += p;
  }
  return DensityMatrix(n, std::move(m));
}

/// Largest entry-wise deviation between two density matrices.
inline double rho_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

/// Half-width of the two-sided Hoeffding band for a mean of `n` samples in [0, 1].
inline double hoeffding(double n, double delta) { return std::sqrt(std::log(2.0 / delta) / (2.0 * n)); }

}  // namespace qbbt::testing
