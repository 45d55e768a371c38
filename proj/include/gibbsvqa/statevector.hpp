// Copyright 2026 The gibbsvqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gibbsvqa/pauli.hpp"
#include "gibbsvqa/qubit.hpp"

namespace gibbsvqa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Dense pure state over q qubits. Little-endian: qubit k is bit k of the
/// amplitude index. Gates act in place.
class StateVector {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits);

  /// Takes ownership of `amplitudes`; length must be a power of two >= 2.
  /// The amplitudes are not renormalized.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;

  /// R_Y(theta) = cos(theta/2) I - i sin(theta/2) Y.
  void apply_ry(Qubit q, double theta);

  void apply_cnot(Qubit control, Qubit target);

  void apply_hadamard(Qubit q);

  /// Parity-preserving two-qubit rotation R_YX(phi_j) R_XY(phi_i). In the
  /// local basis |b1 b2> with b1 the bit of q1 and b2 the bit of q2:
  ///   |00> -> cos(s)|00> - sin(s)|11>,  |11> -> sin(s)|00> + cos(s)|11>
  ///   |01> -> cos(d)|01> + sin(d)|10>,  |10> -> -sin(d)|01> + cos(d)|10>
  /// with s = (phi_i + phi_j)/2 and d = (phi_i - phi_j)/2.
  void apply_rp(Qubit q1, Qubit q2, double phi_i, double phi_j);

  /// <psi| term |psi>, coefficient included.
  double expectation(const PauliTerm& term) const;

  /// Probabilities of the 2^|subset| outcomes of measuring `subset` in the
  /// computational basis. subset[k] becomes bit k of the outcome index.
  std::vector<double> marginal_probabilities(std::span<const Qubit> subset) const;

  /// All 2^q outcome probabilities.
  std::vector<double> probabilities() const;

  /// <this|other>.
  Complex inner(const StateVector& other) const;

 private:
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  void check(Qubit q) const;
  void check_pair(Qubit a, Qubit b) const;

  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Hermitian, trace-one matrix over `num_qubits` qubits.
class DensityMatrix {
 public:
  DensityMatrix(int num_qubits, CMatrix elements);

  static DensityMatrix pure(const StateVector& state);
  static DensityMatrix diagonal(std::span<const double> probabilities);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return elements_.rows(); }
  const CMatrix& matrix() const { return elements_; }

  double hermiticity_error() const;
  double trace_error() const;
  /// Ascending eigenvalues of the Hermitian part.
  Eigen::VectorXd eigenvalues() const;

  /// Hermitian, unit trace and PSD, each within `tol`.
  bool is_valid(double tol = 1e-10) const;

 private:
  int num_qubits_;
  CMatrix elements_;
};

/// Reduced density matrix on `keep` (kept qubit keep[k] -> bit k). `keep`
/// must be nonempty, duplicate-free and leave at least one qubit traced out.
DensityMatrix partial_trace(const StateVector& state, std::span<const Qubit> keep);

/// Multinomial draw of `shots` outcomes. Deterministic for a fixed seed.
std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities,
                                         std::uint64_t shots, std::uint64_t seed);

/// Qubits [first, first + count).
std::vector<Qubit> qubit_range(int first, int count);

}  // namespace gibbsvqa
