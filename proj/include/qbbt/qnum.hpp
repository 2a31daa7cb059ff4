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

// Dense complex linear algebra and the quantum value types shared by every
// other module. Qubit 0 is the most significant bit of a basis-state index,
// so |m> for an integer m reads left to right as a binary string.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbbt/errors.hpp"

namespace qbbt {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-8;
inline constexpr int kMaxQubits = 14;
/// Exact oracle routines refuse channels wider than this.
inline constexpr int kOracleMaxQubits = 6;

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Bit mask of qubit `q` inside an `n`-qubit basis index (qubit 0 is the MSB).
inline std::uint64_t qubit_mask(int q, int n) {
  return std::uint64_t{1} << (n - 1 - q);
}

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("CMatrix: empty dimension");
  }
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw DimensionError("CMatrix: empty dimension");
    if (data_.size() != rows * cols)
      throw DimensionError("CMatrix: entry count does not match shape");
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("CMatrix: non-finite entry");
  }
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw DimensionError("CMatrix: empty dimension");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("CMatrix: product shape mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError("CMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Conjugate transpose.
inline CMatrix dagger(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

/// Kronecker product. The result may not exceed 2^kMaxQubits on either side.
inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  const std::size_t cap = dim_of(kMaxQubits);
  if (a.rows() > cap / b.rows() || a.cols() > cap / b.cols())
    throw DimensionError("tensor: result exceeds the " + std::to_string(kMaxQubits) +
                         "-qubit dimension cap");
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Largest entry-wise modulus of a - b.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

/// ||U^dagger U - I||_max.
inline double unitarity_residual(const CMatrix& u) {
  if (!u.square()) throw DimensionError("unitarity_residual: non-square matrix");
  return max_abs_diff(dagger(u) * u, CMatrix::identity(u.rows()));
}

/// max |A - e^{i phi} B| after choosing phi to maximize |tr(A^dagger B)|.
inline double phase_aligned_distance(const CMatrix& a, const CMatrix& b) {
  const Complex overlap = (dagger(a) * b).trace();
  const Complex phase =
      std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex{1.0};
  return max_abs_diff(a, b * phase);
}

/// Real eigenvalues (ascending) of a Hermitian matrix.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (!m.square()) throw DimensionError("hermitian_eigenvalues: non-square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw SimulationError("hermitian_eigenvalues: solver did not converge");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

// ---------------------------------------------------------------------------
// Standard gates

enum class Gate { I, X, Y, Z, H, S, Sdg, T, Tdg, Rx, Ry, Rz, Phase, CNOT, CZ, SWAP };

inline constexpr std::array kAllGates = {Gate::I,   Gate::X,   Gate::Y,    Gate::Z,
                                         Gate::H,   Gate::S,   Gate::Sdg,  Gate::T,
                                         Gate::Tdg, Gate::Rx,  Gate::Ry,   Gate::Rz,
                                         Gate::Phase, Gate::CNOT, Gate::CZ, Gate::SWAP};

inline std::string_view gate_name(Gate g) {
  switch (g) {
    case Gate::I: return "I";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::Sdg: return "Sdg";
    case Gate::T: return "T";
    case Gate::Tdg: return "Tdg";
    case Gate::Rx: return "Rx";
    case Gate::Ry: return "Ry";
    case Gate::Rz: return "Rz";
    case Gate::Phase: return "Phase";
    case Gate::CNOT: return "CNOT";
    case Gate::CZ: return "CZ";
    case Gate::SWAP: return "SWAP";
  }
  return "?";
}

inline Gate parse_gate(std::string_view name) {
  for (Gate g : kAllGates)
    if (gate_name(g) == name) return g;
  throw DomainError("unknown gate name '" + std::string(name) + "'");
}

/// Number of qubits the base matrix acts on.
inline int gate_arity(Gate g) {
  return (g == Gate::CNOT || g == Gate::CZ || g == Gate::SWAP) ? 2 : 1;
}

inline std::size_t gate_param_count(Gate g) {
  return (g == Gate::Rx || g == Gate::Ry || g == Gate::Rz || g == Gate::Phase) ? 1 : 0;
}

/// The gate that undoes `g` with parameters `params`.
inline std::pair<Gate, std::vector<double>> gate_inverse(Gate g, std::vector<double> params) {
  switch (g) {
    case Gate::S: return {Gate::Sdg, {}};
    case Gate::Sdg: return {Gate::S, {}};
    case Gate::T: return {Gate::Tdg, {}};
    case Gate::Tdg: return {Gate::T, {}};
    case Gate::Rx:
    case Gate::Ry:
    case Gate::Rz:
    case Gate::Phase:
      for (auto& p : params) p = -p;
      return {g, std::move(params)};
    default: return {g, {}};
  }
}

inline CMatrix std_gate(Gate g, std::span<const double> params = {}) {
  if (params.size() != gate_param_count(g))
    throw DomainError("std_gate: " + std::string(gate_name(g)) + " expects " +
                      std::to_string(gate_param_count(g)) + " parameter(s)");
  for (double p : params)
    if (!std::isfinite(p)) throw DomainError("std_gate: non-finite parameter");
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  switch (g) {
    case Gate::I: return CMatrix::identity(2);
    case Gate::X: return {{0.0, 1.0}, {1.0, 0.0}};
    case Gate::Y: return {{0.0, -1i}, {1i, 0.0}};
    case Gate::Z: return {{1.0, 0.0}, {0.0, -1.0}};
    case Gate::H: return {{r, r}, {r, -r}};
    case Gate::S: return {{1.0, 0.0}, {0.0, 1i}};
    case Gate::Sdg: return {{1.0, 0.0}, {0.0, -1i}};
    case Gate::T: return {{1.0, 0.0}, {0.0, std::polar(1.0, std::numbers::pi / 4)}};
    case Gate::Tdg: return {{1.0, 0.0}, {0.0, std::polar(1.0, -std::numbers::pi / 4)}};
    case Gate::Rx: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {{c, -1i * s}, {-1i * s, c}};
    }
    case Gate::Ry: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {{c, -s}, {s, c}};
    }
    case Gate::Rz:
      return {{std::polar(1.0, -params[0] / 2), 0.0}, {0.0, std::polar(1.0, params[0] / 2)}};
    case Gate::Phase: return {{1.0, 0.0}, {0.0, std::polar(1.0, params[0])}};
    case Gate::CNOT:
      return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
    case Gate::CZ:
      return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, -1.0}};
    case Gate::SWAP:
      return {{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
  }
  throw DomainError("std_gate: unhandled gate");
}

inline CMatrix std_gate(std::string_view name, std::span<const double> params = {}) {
  return std_gate(parse_gate(name), params);
}

/// Pauli matrix sigma_i, i in {0,1,2,3}.
inline CMatrix pauli(int i) {
  switch (i) {
    case 0: return std_gate(Gate::I);
    case 1: return std_gate(Gate::X);
    case 2: return std_gate(Gate::Y);
    case 3: return std_gate(Gate::Z);
    default: throw DomainError("pauli: index " + std::to_string(i) + " not in 0..3");
  }
}

// ---------------------------------------------------------------------------
// States

class StateVector {
 public:
  StateVector(int n_qubits, std::vector<Complex> amps)
      : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits < 0 || n_qubits > kMaxQubits)
      throw DimensionError("StateVector: qubit count out of range");
    if (amps_.size() != dim_of(n_qubits))
      throw DimensionError("StateVector: amplitude count is not 2^n");
    double norm = 0.0;
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw DomainError("StateVector: non-finite amplitude");
      norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kNormTolerance)
      throw DomainError("StateVector: not normalized (sum |a|^2 = " + std::to_string(norm) + ")");
  }

  /// Computational basis state |m>.
  static StateVector basis(int n_qubits, std::uint64_t m) {
    if (n_qubits < 0 || n_qubits > kMaxQubits)
      throw DimensionError("StateVector: qubit count out of range");
    if (m >= dim_of(n_qubits)) throw DomainError("StateVector::basis: index out of range");
    std::vector<Complex> amps(dim_of(n_qubits));
    amps[m] = 1.0;
    return StateVector(n_qubits, std::move(amps));
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amps() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  /// <this|other>
  Complex inner(const StateVector& other) const {
    if (other.dim() != dim()) throw DimensionError("StateVector::inner: size mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
    return acc;
  }

  /// max_i |a_i - b_i| after removing the global phase.
  double phase_aligned_distance(const StateVector& other) const {
    const Complex ov = inner(other);
    const Complex ph = std::abs(ov) > 0.0 ? std::conj(ov) / std::abs(ov) : Complex{1.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      worst = std::max(worst, std::abs(amps_[i] - other.amps_[i] * ph));
    return worst;
  }

  friend StateVector tensor(const StateVector& a, const StateVector& b) {
    if (a.n_qubits_ + b.n_qubits_ > kMaxQubits)
      throw DimensionError("tensor: state exceeds the qubit cap");
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a.amps_[i] * b.amps_[j];
    return StateVector(a.n_qubits_ + b.n_qubits_, std::move(amps));
  }

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

class DensityMatrix {
 public:
  /// Validates trace, hermiticity and positivity.
  DensityMatrix(int n_qubits, CMatrix mat) : n_qubits_(n_qubits), mat_(std::move(mat)) {
    check_shape();
    if (std::abs(mat_.trace() - Complex{1.0}) > kNormTolerance)
      throw DomainError("DensityMatrix: trace is not 1");
    if (max_abs_diff(mat_, dagger(mat_)) > kNormTolerance)
      throw DomainError("DensityMatrix: not Hermitian");
    if (hermitian_eigenvalues(mat_).front() < -kPsdTolerance)
      throw DomainError("DensityMatrix: negative eigenvalue");
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    CMatrix m(psi.dim(), psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i)
      for (std::size_t j = 0; j < psi.dim(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(psi.n_qubits(), std::move(m), Unchecked{});
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    CMatrix m = CMatrix::identity(dim_of(n_qubits));
    m *= 1.0 / static_cast<double>(dim_of(n_qubits));
    return DensityMatrix(n_qubits, std::move(m), Unchecked{});
  }

  /// Skips the eigenvalue check; used by simulators whose output is PSD by
  /// construction. Trace and hermiticity are still enforced.
  struct Unchecked {};
  DensityMatrix(int n_qubits, CMatrix mat, Unchecked) : n_qubits_(n_qubits), mat_(std::move(mat)) {
    check_shape();
    if (std::abs(mat_.trace() - Complex{1.0}) > kNormTolerance)
      throw DomainError("DensityMatrix: trace is not 1");
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return mat_.rows(); }
  const CMatrix& matrix() const { return mat_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  double purity() const;

 private:
  void check_shape() const {
    if (n_qubits_ < 0 || n_qubits_ > kMaxQubits)
      throw DimensionError("DensityMatrix: qubit count out of range");
    if (!mat_.square() || mat_.rows() != dim_of(n_qubits_))
      throw DimensionError("DensityMatrix: matrix is not 2^n x 2^n");
  }

  int n_qubits_;
  CMatrix mat_;
};

/// Re tr(A B) for equal-size square matrices, computed in O(d^2).
inline Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("trace_of_product: shape mismatch");
  Complex acc = 0.0;
  const std::size_t d = a.rows();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) acc += a(i, k) * b(k, i);
  return acc;
}

inline double DensityMatrix::purity() const { return trace_of_product(mat_, mat_).real(); }

}  // namespace qbbt
