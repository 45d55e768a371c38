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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "gibbsvqa/pauli.hpp"
#include "gibbsvqa/statevector.hpp"

namespace gibbsvqa {

enum class Boundary { Periodic, Open };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

inline constexpr int kDefaultDenseLimit = 14;

/// Weighted sum of Pauli strings on `num_qubits` qubits.
class Hamiltonian {
 public:
  Hamiltonian(int num_qubits, std::vector<PauliTerm> terms, Boundary boundary = Boundary::Open);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  Boundary boundary() const { return boundary_; }

  /// Every term has real matrix elements (an even number of Y factors).
  bool is_real() const;
  /// Every term commutes with the global Z-parity operator.
  bool conserves_parity() const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
  Boundary boundary_;
};

/// H = -sum_bonds X_i X_{i+1} - h sum_i Z_i. Periodic closes the ring with a
/// (n-1, 0) bond for n >= 3; at n = 2 the single bond is counted once.
Hamiltonian build_ising(int n, double h, Boundary boundary);

/// Dense 2^n x 2^n matrix. Throws ResourceError above `dense_limit` qubits.
CMatrix to_dense(const Hamiltonian& h, int dense_limit = kDefaultDenseLimit);

/// Ascending eigenvalues and (optionally) the matching eigenvectors as
/// columns. Degenerate blocks carry whatever basis the solver returns.
class Spectrum {
 public:
  Spectrum(int num_qubits, Eigen::VectorXd energies, CMatrix eigenvectors);

  /// Energies only; eigenvector access throws.
  static Spectrum energies_only(int num_qubits, Eigen::VectorXd energies);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return energies_.size(); }
  const Eigen::VectorXd& energies() const { return energies_; }
  std::span<const double> energy_span() const { return {energies_.data(), static_cast<std::size_t>(energies_.size())}; }
  bool has_eigenvectors() const { return eigenvectors_.size() > 0; }
  const CMatrix& eigenvectors() const;

 private:
  int num_qubits_;
  Eigen::VectorXd energies_;
  CMatrix eigenvectors_;
};

struct DiagonalizeOptions {
  bool eigenvectors = true;
  int dense_limit = kDefaultDenseLimit;
};

/// Exact diagonalization. Parity-conserving Hamiltonians are split into the
/// two parity sectors first. Throws NumericError on non-finite coefficients.
Spectrum diagonalize(const Hamiltonian& h, DiagonalizeOptions options = {});

/// Diagonalize an explicit matrix. Throws NumericError when it is not
/// Hermitian within 1e-10 (relative to its largest entry) or not finite.
Spectrum diagonalize(const CMatrix& matrix);

/// Boltzmann weights exp(-beta E_i)/Z, evaluated with the ground energy
/// shifted out. beta must be >= 0.
std::vector<double> boltzmann_probs(std::span<const double> energies, double beta);
std::vector<double> boltzmann_probs(const Spectrum& spectrum, double beta);

/// ln Z_beta via shifted log-sum-exp.
double log_partition_function(std::span<const double> energies, double beta);

/// sum_i p_i |E_i><E_i| with Boltzmann p_i. beta = 0 gives exactly I/d.
DensityMatrix gibbs_state(const Spectrum& spectrum, double beta);

/// -ln(Z_beta)/beta. beta must be > 0.
double exact_free_energy(const Spectrum& spectrum, double beta);

/// Frobenius norm of [H, P] with P the product of Z on every qubit.
double parity_commutator_norm(const Hamiltonian& h, int dense_limit = kDefaultDenseLimit);

/// Regression fixture: {"n", "h", "boundary", "energies"}.
nlohmann::json spectrum_fixture(const Spectrum& spectrum, double h, Boundary boundary);

}  // namespace gibbsvqa
