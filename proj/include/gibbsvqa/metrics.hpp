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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gibbsvqa/ansatz.hpp"
#include "gibbsvqa/hamiltonian.hpp"
#include "gibbsvqa/statevector.hpp"

namespace gibbsvqa {

/// Uhlmann-Jozsa fidelity (Tr sqrt(sqrt(rho2) rho1 sqrt(rho2)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Half the sum of |eigenvalues| of rho1 - rho2.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Tr rho1 (ln rho1 - ln rho2); +infinity when rho1 has weight outside the
/// support of rho2.
double relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// von Neumann entropy in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// (sum_i sqrt(p_i q_i))^2.
double classical_fidelity(std::span<const double> p, std::span<const double> q);

/// Relative standard deviation of the count of outcome i after `shots`
/// draws from the Boltzmann distribution: sqrt((Z/e^{-beta E_i} - 1)/N_s).
double cv_boltzmann(const Spectrum& spectrum, double beta, std::uint64_t shots, std::size_t i);
double cv_boltzmann(std::span<const double> energies, double beta, std::uint64_t shots, std::size_t i);

struct FitResult {
  double exponent = 0.0;   ///< alpha_i
  double prefactor = 0.0;  ///< C
  double r_squared = 0.0;
  std::vector<int> n_values;
  std::size_t state_index = 0;
};

/// Least-squares line through (ln n, ln y).
FitResult fit_power_law(std::span<const int> n_values, std::span<const double> y);

/// Fit c_v sqrt(N_s) = C n^alpha over Ising chains of the listed sizes.
FitResult fit_cv_exponent(double h, double beta, std::size_t i, std::span<const int> n_values,
                          std::uint64_t shots, Boundary boundary = Boundary::Periodic);

/// |E0 + E3 - E1 - E2| over the four lowest levels.
double product_ansatz_constraint_gap(std::span<const double> energies);
double product_ansatz_constraint_gap(const Spectrum& spectrum);

/// q_i = prod_j Ber(sin^2(theta_j/2)) with qubit j = bit j of i.
std::vector<double> product_distribution(std::span<const double> angles);

/// Largest classical fidelity between the Boltzmann distribution (p_i on
/// basis state i) and any product distribution, by multistart BFGS.
double best_product_distribution_fidelity(const Spectrum& spectrum, double beta, int restarts,
                                          std::uint64_t seed = 1);

/// Largest classical fidelity between a target distribution and the
/// ancilla marginal of the R_Y/CNOT ansatz with `layers` entangling layers.
double best_ancilla_distribution_fidelity(std::span<const double> target, int n, int layers,
                                          int restarts, std::uint64_t seed = 1);

/// Mixture of 2^n Haar-random pure states with uniform simplex weights.
DensityMatrix random_density_matrix(int num_qubits, std::mt19937_64& rng);

/// Haar-random unitary via QR of a complex Gaussian matrix.
CMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace gibbsvqa
