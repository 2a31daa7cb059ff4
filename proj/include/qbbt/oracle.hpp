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

// Exact ground truth: overlaps, the equality indicator E, exhaustive Pauli
// equivalence, and a unitarity decision computed two independent ways.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qbbt/circuit.hpp"
#include "qbbt/qnum.hpp"
#include "qbbt/sim.hpp"
#include "qbbt/states.hpp"

namespace qbbt {

inline constexpr double kOracleThreshold = 1e-8;

/// tr(rho1 rho2); the imaginary part must vanish.
inline double overlap(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionError("overlap: dimension mismatch");
  const Complex t = trace_of_product(rho1.matrix(), rho2.matrix());
  if (std::abs(t.imag()) > kNormTolerance) throw ConsistencyError("overlap: complex trace");
  return t.real();
}

inline double purity(const DensityMatrix& rho) { return overlap(rho, rho); }

/// |(tr rho1^2 + tr rho2^2) / 2 - tr rho1 rho2|
inline double e_param(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionError("e_param: dimension mismatch");
  return std::abs(0.5 * (purity(rho1) + purity(rho2)) - overlap(rho1, rho2));
}

/// The single-qubit Pauli eigenstate named by `digit`.
inline std::array<Complex, 2> pauli_state(int digit) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (digit) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {r, r};
    case 3: return {r, -r};
    case 4: return {r, Complex(0.0, r)};
    case 5: return {r, Complex(0.0, -r)};
    default: throw DomainError("pauli_state: digit outside 0..5");
  }
}

/// |psi_K>, built directly as a tensor product.
inline StateVector pauli_product_state(const PauliIndex& k) {
  std::vector<Complex> amps{1.0};
  for (int digit : k) {
    const auto s = pauli_state(digit);
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * s[0];
      next[2 * i + 1] = amps[i] * s[1];
    }
    amps = std::move(next);
  }
  return StateVector(static_cast<int>(k.size()), std::move(amps));
}

namespace detail {

inline void require_oracle_size(const Program& p) {
  if (p.n_qubits() > kOracleMaxQubits)
    throw DimensionError("oracle: " + p.name() + " exceeds the " + std::to_string(kOracleMaxQubits) +
                         "-qubit oracle cap");
}

inline bool next_pauli_index(PauliIndex& k) {
  for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i) {
    if (++k[i] < 6) return true;
    k[i] = 0;
  }
  return false;
}

}  // namespace detail

/// Largest E over all 6^n Pauli product inputs.
inline double max_pauli_e(const Program& p1, const Program& p2, bool stop_early = false) {
  if (p1.n_qubits() != p2.n_qubits()) throw RegisterMismatch("oracle: register sizes differ");
  detail::require_oracle_size(p1);
  const CompiledProgram c1 = compile(p1), c2 = compile(p2);
  PauliIndex k(p1.n_qubits(), 0);
  double worst = 0.0;
  do {
    const StateVector in = pauli_product_state(k);
    worst = std::max(worst, e_param(exact_output(c1, in), exact_output(c2, in)));
    if (stop_early && worst >= kOracleThreshold) break;
  } while (detail::next_pauli_index(k));
  return worst;
}

/// True iff E < 1e-8 on every Pauli product input.
inline bool exact_equivalent(const Program& p1, const Program& p2) {
  return max_pauli_e(p1, p2, true) < kOracleThreshold;
}

/// Orthogonality route: orthogonal basis pairs and orthogonal superposition
/// pairs along the path 0-1-...-(d-1) must stay orthogonal.
inline bool unitary_by_orthogonality(const Program& p) {
  detail::require_oracle_size(p);
  const CompiledProgram cp = compile(p);
  const int n = p.n_qubits();
  const std::size_t d = dim_of(n);
  std::vector<DensityMatrix> outs;
  outs.reserve(d);
  for (std::size_t m = 0; m < d; ++m) outs.push_back(exact_output(cp, StateVector::basis(n, m)));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      if (overlap(outs[a], outs[b]) >= kOracleThreshold) return false;
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t m = 0; m + 1 < d; ++m) {
    std::vector<Complex> plus(d), minus(d);
    plus[m] = minus[m] = r;
    plus[m + 1] = r;
    minus[m + 1] = -r;
    const auto o1 = exact_output(cp, StateVector(n, std::move(plus)));
    const auto o2 = exact_output(cp, StateVector(n, std::move(minus)));
    if (overlap(o1, o2) >= kOracleThreshold) return false;
  }
  return true;
}

inline constexpr std::size_t kMaxChoiComponents = 4096;

/// Nonzero Choi eigenvalues (descending), normalized so a unitary channel has
/// the single eigenvalue d. Computed from the Gram matrix of the pure branch
/// components of (id x P) applied to the maximally entangled state.
inline std::vector<double> choi_spectrum(const Program& p) {
  detail::require_oracle_size(p);
  const int n = p.n_qubits();
  if (2 * n + p.n_ancilla() > kMaxQubits) throw DimensionError("choi_spectrum: register too wide");
  std::vector<Instruction> ops;
  for (const auto& ins : p.instructions())
    ops.push_back(detail::remapped(ins, [n](int q) { return q < n ? n + q : 2 * n + (q - n); }, 0));
  const CompiledProgram cp = compile(Program(p.name() + "+ref", 2 * n, p.n_ancilla(), std::move(ops)));

  const std::size_t d = dim_of(n);
  std::vector<Complex> phi(d * d);
  for (std::size_t i = 0; i < d; ++i) phi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  const auto branches = exact_branches(cp, phi);

  const std::size_t da = dim_of(p.n_ancilla());
  std::vector<std::vector<Complex>> comps;
  for (const auto& b : branches) {
    for (std::size_t c = 0; c < da; ++c) {
      std::vector<Complex> v(d * d);
      double w = 0.0;
      for (std::size_t x = 0; x < d * d; ++x) {
        v[x] = b.amps[x * da + c];
        w += std::norm(v[x]);
      }
      if (w > kBranchCutoff) comps.push_back(std::move(v));
      if (comps.size() > kMaxChoiComponents) throw ResourceError("choi_spectrum: too many components");
    }
  }
  const auto r = static_cast<Eigen::Index>(comps.size());
  Eigen::MatrixXcd gram(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = i; j < r; ++j) {
      Complex acc = 0.0;
      for (std::size_t x = 0; x < d * d; ++x) acc += std::conj(comps[i][x]) * comps[j][x];
      gram(i, j) = acc;
      gram(j, i) = std::conj(acc);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + r);
  for (auto& e : ev) e *= static_cast<double>(d);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

/// Choi-rank route: one eigenvalue d, every other eigenvalue below 1e-8.
inline bool unitary_by_choi_rank(const Program& p) {
  const auto ev = choi_spectrum(p);
  const double d = static_cast<double>(dim_of(p.n_qubits()));
  if (ev.empty() || std::abs(ev[0] - d) > kOracleThreshold * d) return false;
  return ev.size() == 1 || ev[1] < kOracleThreshold;
}

/// Exact unitarity decision; both routes must agree.
inline bool exact_unitary(const Program& p) {
  const bool by_theorem = unitary_by_orthogonality(p);
  const bool by_choi = unitary_by_choi_rank(p);
  if (by_theorem != by_choi)
    throw ConsistencyError("exact_unitary: orthogonality and Choi-rank routes disagree on " + p.name());
  return by_theorem;
}

/// The d^2 x d^2 Choi matrix sum_ij |i><j| (x) E(|i><j|), assembled from
/// exact_channel on density-matrix inputs by polarization.
struct ChannelMatrix {
  int n_qubits;
  CMatrix choi;

  /// tr over the output factor; the identity for a trace-preserving channel.
  CMatrix input_marginal() const {
    const std::size_t d = dim_of(n_qubits);
    CMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t a = 0; a < d; ++a) out(i, j) += choi(i * d + a, j * d + a);
    return out;
  }
};

inline constexpr int kChoiMatrixMaxQubits = 3;

inline ChannelMatrix choi_matrix(const Program& p) {
  const int n = p.n_qubits();
  if (n > kChoiMatrixMaxQubits) throw DimensionError("choi_matrix: register too wide");
  const std::size_t d = dim_of(n);
  auto pure_out = [&](std::size_t i, std::size_t j, Complex phase) {
    std::vector<Complex> amps(d);
    if (i == j) {
      amps[i] = 1.0;
    } else {
      amps[i] = 1.0 / std::sqrt(2.0);
      amps[j] = phase / std::sqrt(2.0);
    }
    return exact_channel(p, DensityMatrix::from_pure(StateVector(n, std::move(amps)))).matrix();
  };
  std::vector<CMatrix> diag(d);
  for (std::size_t i = 0; i < d; ++i) diag[i] = pure_out(i, i, 1.0);
  CMatrix choi(d * d, d * d);
  auto place = [&](std::size_t i, std::size_t j, const CMatrix& block) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) choi(i * d + a, j * d + b) = block(a, b);
  };
  for (std::size_t i = 0; i < d; ++i) {
    place(i, i, diag[i]);
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      CMatrix re = pure_out(i, j, 1.0);
      re *= 2.0;
      re -= diag[i];
      re -= diag[j];
      CMatrix im = pure_out(i, j, Complex(0.0, 1.0));
      im *= 2.0;
      im -= diag[i];
      im -= diag[j];
      im *= Complex(0.0, 1.0);
      re += im;
      re *= 0.5;
      place(i, j, re);
    }
  }
  return ChannelMatrix{n, std::move(choi)};
}

}  // namespace qbbt
