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

#include <cstddef>
#include <span>
#include <vector>

#include "gibbsvqa/hamiltonian.hpp"
#include "gibbsvqa/statevector.hpp"

namespace gibbsvqa {

/// Topology of the two-register circuit. A joint state has 2n qubits:
/// ancillas at 0..n-1, system at n..2n-1.
struct AnsatzConfig {
  int n = 2;
  int layers_ancilla = 1;
  int layers_system = 1;
  /// Open drops the ring-closing (n-1, 0) system gate, same as
  /// drop_nonadjacent_rp. Neither applies at n = 2, where that pair is
  /// nearest-neighbour.
  Boundary connectivity = Boundary::Periodic;
  bool drop_nonadjacent_rp = false;

  /// n(l_A + 1).
  std::size_t num_theta() const;
  /// 2n l_S. Dropped gates keep their (unused) slots.
  std::size_t num_phi() const;
  std::size_t num_params() const { return num_theta() + num_phi(); }
  int total_qubits() const { return 2 * n; }

  /// Throws ArgumentError on n < 1 or non-positive layer counts.
  void validate() const;

  /// l_A = 1, l_S = max(n - 1, 1).
  static AnsatzConfig defaults_for(int n);
};

/// Ancilla angles theta, then system angles phi.
///
/// theta is column-major: column c holds qubits 0..n-1 at [c*n, c*n + n).
/// phi is layer by layer; inside a layer the even sublayer precedes the odd
/// one, pairs ascend, and each gate's (phi_i, phi_j) are adjacent.
struct ParameterVector {
  std::vector<double> theta;
  std::vector<double> phi;

  static ParameterVector zeros(const AnsatzConfig& config);
  /// Splits a flat [theta..., phi...] array.
  static ParameterVector from_flat(const AnsatzConfig& config, std::span<const double> flat);
  std::vector<double> flat() const;

  /// Throws ArgumentError when lengths disagree with `config`.
  void check(const AnsatzConfig& config) const;
};

/// One R_P application: local qubits within a register and the offset of
/// its (phi_i, phi_j) pair inside the phi array.
struct RpPlacement {
  int first;
  int second;
  std::size_t phi_offset;
};

/// Placements of every applied R_P gate across all system layers.
std::vector<RpPlacement> system_gate_schedule(const AnsatzConfig& config);

void apply_ancilla_ansatz(StateVector& state, const AnsatzConfig& config,
                          std::span<const double> theta);

/// CNOT(A_i -> S_i) for i in 0..n-1 on a 2n-qubit state.
void apply_transversal_cnots(StateVector& state);

/// Brick-wall R_P layers on the register starting at `register_offset`
/// (n for the system register, 0 to act on the ancillas).
void apply_system_ansatz(StateVector& state, const AnsatzConfig& config,
                         std::span<const double> phi, int register_offset);

/// |0>^{2n} -> U_A -> transversal CNOTs -> U_S.
StateVector prepare_variational_state(const AnsatzConfig& config, const ParameterVector& params);

/// Same as prepare_variational_state with U_S applied to both registers.
StateVector prepare_tfd_state(const AnsatzConfig& config, const ParameterVector& params);

struct ResourceCount {
  long long num_parameters = 0;
  long long num_cnot = 0;
  long long num_sqrt_x = 0;
  long long circuit_depth = 0;

  friend bool operator==(const ResourceCount&, const ResourceCount&) = default;
};

/// Closed ladder connectivity gate counts; defined for n > 2 only.
ResourceCount count_resources(const AnsatzConfig& config);

/// The per-n closed forms quoted for l_A = 1, l_S = n - 1. The sqrt(X)
/// entry, 2n(3n - 2), disagrees with count_resources (2n(3n - 1)); the
/// latter follows from two sqrt(X) per R_Y and six per R_P.
ResourceCount quoted_resources_at_default_layers(int n);

}  // namespace gibbsvqa
