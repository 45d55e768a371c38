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
#include <span>
#include <vector>

#include "gibbsvqa/ansatz.hpp"
#include "gibbsvqa/hamiltonian.hpp"

namespace gibbsvqa {

struct EvaluationMode {
  enum class Kind { Exact, Shots };
  Kind kind = Kind::Exact;
  std::uint64_t shots_per_circuit = 1024;
  /// Adds (K - 1)/(2 N) to the plug-in entropy, K = observed outcomes.
  bool miller_madow = false;

  static EvaluationMode exact() { return {}; }
  static EvaluationMode shots(std::uint64_t n) { return {Kind::Shots, n, false}; }
};

const char* to_string(EvaluationMode::Kind kind);

struct FreeEnergyBreakdown {
  double energy = 0.0;   ///< Tr(H rho_S)
  double entropy = 0.0;  ///< nats
  double beta = 0.0;
  double free_energy = 0.0;
  /// Standard error of `energy` from the shot counts (0 in exact mode).
  double energy_stderr = 0.0;
  /// Circuits executed for this evaluation (0 in exact mode).
  int circuits = 0;
};

/// -sum p ln p with 0 ln 0 = 0. Entries below -1e-12 or a total off by more
/// than 1e-8 throw ArgumentError.
double von_neumann_from_probs(std::span<const double> p);

/// Objective on the exact statevector: energy from the system register,
/// entropy from the ancilla marginal.
FreeEnergyBreakdown evaluate_exact(const AnsatzConfig& config, const ParameterVector& params,
                                   const Hamiltonian& h, double beta);

/// Shot-sampled objective with two measurement circuits: every system qubit
/// rotated to the X basis for the all-X terms, and a computational-basis
/// readout of all 2n qubits that serves both the all-Z terms (system bits)
/// and the plug-in entropy (ancilla bits). `seed` keys both circuits'
/// sample streams. Terms mixing axes are rejected with UnsupportedError.
FreeEnergyBreakdown evaluate_shots(const AnsatzConfig& config, const ParameterVector& params,
                                   const Hamiltonian& h, double beta, const EvaluationMode& mode,
                                   std::uint64_t seed);

/// d(free energy)/d(theta..., phi...) by the +-pi/2 shift rule. The entropy
/// part uses shifted ancilla marginals and dS = -sum_i ln(p_i) dp_i.
std::vector<double> gradient_exact(const AnsatzConfig& config, const ParameterVector& params,
                                   const Hamiltonian& h, double beta);

/// Same shift rule applied to the entropy alone.
std::vector<double> entropy_gradient(const AnsatzConfig& config, const ParameterVector& params);

}  // namespace gibbsvqa
