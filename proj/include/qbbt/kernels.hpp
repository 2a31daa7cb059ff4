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

// In-place application of small controlled gates to amplitude arrays. Shared
// by the unitary builder, the shot simulator and the density-operator
// evolution (which applies the same kernel along rows and columns).

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "qbbt/qnum.hpp"

namespace qbbt::kernels {

/// A 1- or 2-qubit matrix bound to concrete bit positions of a register.
struct CompiledGate {
  std::array<Complex, 16> m{};  // row-major, 2x2 or 4x4
  int arity = 1;
  std::uint64_t t0 = 0;  // mask of the first target (MSB of the local index)
  std::uint64_t t1 = 0;  // mask of the second target, arity 2 only
  std::uint64_t controls = 0;
};

inline CompiledGate bind(const CMatrix& matrix, std::uint64_t t0, std::uint64_t t1,
                         std::uint64_t controls) {
  CompiledGate g;
  g.arity = matrix.rows() == 4 ? 2 : 1;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j) g.m[i * matrix.cols() + j] = matrix(i, j);
  g.t0 = t0;
  g.t1 = t1;
  g.controls = controls;
  return g;
}

inline CompiledGate conjugated(CompiledGate g) {
  for (auto& z : g.m) z = std::conj(z);
  return g;
}

/// Applies `g` to the vector base[0], base[stride], ..., base[(dim-1)*stride].
inline void apply(const CompiledGate& g, Complex* base, std::size_t dim, std::size_t stride = 1) {
  const std::uint64_t cm = g.controls;
  if (g.arity == 1) {
    const std::uint64_t t = g.t0;
    const Complex m00 = g.m[0], m01 = g.m[1], m10 = g.m[2], m11 = g.m[3];
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & t) || (i & cm) != cm) continue;
      Complex& a0 = base[i * stride];
      Complex& a1 = base[(i | t) * stride];
      const Complex x0 = a0, x1 = a1;
      a0 = m00 * x0 + m01 * x1;
      a1 = m10 * x0 + m11 * x1;
    }
    return;
  }
  const std::uint64_t b0 = g.t0, b1 = g.t1;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & (b0 | b1)) || (i & cm) != cm) continue;
    const std::uint64_t idx[4] = {i, i | b1, i | b0, i | b0 | b1};
    Complex x[4];
    for (int r = 0; r < 4; ++r) x[r] = base[idx[r] * stride];
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += g.m[r * 4 + c] * x[c];
      base[idx[r] * stride] = acc;
    }
  }
}

/// rho <- G rho G^dagger for a row-major d x d matrix.
inline void apply_conjugation(const CompiledGate& g, Complex* rho, std::size_t dim) {
  for (std::size_t col = 0; col < dim; ++col) apply(g, rho + col, dim, dim);
  const CompiledGate gc = conjugated(g);
  for (std::size_t row = 0; row < dim; ++row) apply(gc, rho + row * dim, dim, 1);
}

}  // namespace qbbt::kernels
