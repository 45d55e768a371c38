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


#include "gibbsvqa/ansatz.hpp"

#include <string>

#include "gibbsvqa/errors.hpp"

namespace gibbsvqa {

std::size_t AnsatzConfig::num_theta() const {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(layers_ancilla + 1);
}

std::size_t AnsatzConfig::num_phi() const {
  return 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(layers_system);
}

void AnsatzConfig::validate() const {
  if (n < 1 || n > 15) throw ArgumentError("register size n must be in [1, 15]");
  if (layers_ancilla < 1) throw ArgumentError("ancilla layer count must be >= 1");
  if (layers_system < 1) throw ArgumentError("system layer count must be >= 1");
}

AnsatzConfig AnsatzConfig::defaults_for(int n) {
  AnsatzConfig c;
  c.n = n;
  c.layers_ancilla = 1;
  c.layers_system = n > 1 ? n - 1 : 1;
  return c;
}

ParameterVector ParameterVector::zeros(const AnsatzConfig& config) {
  config.validate();
  return {std::vector<double>(config.num_theta(), 0.0), std::vector<double>(config.num_phi(), 0.0)};
}

ParameterVector ParameterVector::from_flat(const AnsatzConfig& config,
                                           std::span<const double> flat) {
  config.validate();
  if (flat.size() != config.num_params()) {
    throw ArgumentError("expected " + std::to_string(config.num_params()) +
                        " parameters, got " + std::to_string(flat.size()));
  }
  ParameterVector p;
  p.theta.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(config.num_theta()));
  p.phi.assign(flat.begin() + static_cast<std::ptrdiff_t>(config.num_theta()), flat.end());
  return p;
}

std::vector<double> ParameterVector::flat() const {
  std::vector<double> out = theta;
  out.insert(out.end(), phi.begin(), phi.end());
  return out;
}

void ParameterVector::check(const AnsatzConfig& config) const {
  if (theta.size() != config.num_theta()) {
    throw ArgumentError("theta has length " + std::to_string(theta.size()) + ", expected " +
                        std::to_string(config.num_theta()));
  }
  if (phi.size() != config.num_phi()) {
    throw ArgumentError("phi has length " + std::to_string(phi.size()) + ", expected " +
                        std::to_string(config.num_phi()));
  }
}

std::vector<RpPlacement> system_gate_schedule(const AnsatzConfig& config) {
  config.validate();
  const int n = config.n;
  std::vector<RpPlacement> out;
  if (n < 2) return out;
  const bool drop_ring = n > 2 && (config.drop_nonadjacent_rp || config.connectivity == Boundary::Open);
  std::size_t offset = 0;
  for (int layer = 0; layer < config.layers_system; ++layer) {
    for (int a = 0; a + 1 < n; a += 2) {
      out.push_back({a, a + 1, offset});
      offset += 2;
    }
    for (int a = 1; a + 1 < n; a += 2) {
      out.push_back({a, a + 1, offset});
      offset += 2;
    }
    // Ring closure: completes n gates per layer for odd and even n alike.
    if (!drop_ring) out.push_back({n - 1, 0, offset});
    offset += 2;
  }
  return out;
}

void apply_ancilla_ansatz(StateVector& state, const AnsatzConfig& config,
                          std::span<const double> theta) {
  config.validate();
  if (theta.size() != config.num_theta()) {
    throw ArgumentError("ancilla ansatz expects " + std::to_string(config.num_theta()) +
                        " angles, got " + std::to_string(theta.size()));
  }
  const int n = config.n;
  std::size_t k = 0;
  for (int q = 0; q < n; ++q) state.apply_ry(Qubit(q), theta[k++]);
  for (int layer = 0; layer < config.layers_ancilla; ++layer) {
    for (int q = 0; q + 1 < n; ++q) state.apply_cnot(Qubit(q), Qubit(q + 1));
    for (int q = 0; q < n; ++q) state.apply_ry(Qubit(q), theta[k++]);
  }
}

void apply_transversal_cnots(StateVector& state) {
  const int q = state.num_qubits();
  if (q % 2 != 0) {
    throw ArgumentError("transversal CNOTs need an even qubit count, got " + std::to_string(q));
  }
  const int n = q / 2;
  for (int i = 0; i < n; ++i) state.apply_cnot(Qubit(i), Qubit(n + i));
}

void apply_system_ansatz(StateVector& state, const AnsatzConfig& config,
                         std::span<const double> phi, int register_offset) {
  config.validate();
  if (phi.size() != config.num_phi()) {
    throw ArgumentError("system ansatz expects " + std::to_string(config.num_phi()) +
                        " angles, got " + std::to_string(phi.size()));
  }
  if (register_offset < 0 || register_offset + config.n > state.num_qubits()) {
    throw IndexError("register does not fit in the state");
  }
  for (const auto& g : system_gate_schedule(config)) {
    state.apply_rp(Qubit(register_offset + g.first), Qubit(register_offset + g.second),
                   phi[g.phi_offset], phi[g.phi_offset + 1]);
  }
}

StateVector prepare_variational_state(const AnsatzConfig& config, const ParameterVector& params) {
  config.validate();
  params.check(config);
  StateVector state(config.total_qubits());
  apply_ancilla_ansatz(state, config, params.theta);
  apply_transversal_cnots(state);
  apply_system_ansatz(state, config, params.phi, config.n);
  return state;
}

StateVector prepare_tfd_state(const AnsatzConfig& config, const ParameterVector& params) {
  StateVector state = prepare_variational_state(config, params);
  apply_system_ansatz(state, config, params.phi, 0);
  return state;
}

ResourceCount count_resources(const AnsatzConfig& config) {
  config.validate();
  const long long n = config.n;
  if (n <= 2) {
    throw UnsupportedError("resource formulas hold for n > 2 only, got n = " + std::to_string(n));
  }
  const long long la = config.layers_ancilla;
  const long long ls = config.layers_system;
  const long long p = (n % 2 == 0) ? 12 : 18;
  ResourceCount r;
  r.num_parameters = n * (la + 1) + 2 * n * ls;
  r.num_cnot = (n - 1) * la + 2 * n * ls + n;
  r.num_sqrt_x = 2 * n * (la + 1) + 6 * n * ls;
  r.circuit_depth = (n + 1) * la + p * ls + 3;
  return r;
}

ResourceCount quoted_resources_at_default_layers(int n_in) {
  if (n_in <= 2) throw UnsupportedError("resource formulas hold for n > 2 only");
  const long long n = n_in;
  const long long p = (n % 2 == 0) ? 12 : 18;
  return {2 * n * n, 2 * n * n - 1, 2 * n * (3 * n - 2), (p + 1) * n - p + 4};
}

}  // namespace gibbsvqa
