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


#include "gibbsvqa/objective.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/random.hpp"

namespace gibbsvqa {

namespace {

void check_problem(const AnsatzConfig& config, const ParameterVector& params, const Hamiltonian& h,
                   double beta) {
  config.validate();
  params.check(config);
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ArgumentError("objective needs a finite beta > 0");
  }
  if (h.num_qubits() != config.n) {
    throw ArgumentError("Hamiltonian acts on " + std::to_string(h.num_qubits()) +
                        " qubits but the system register has " + std::to_string(config.n));
  }
}

double system_energy(const StateVector& state, const Hamiltonian& h, int offset) {
  double e = 0.0;
  for (const auto& term : h.terms()) e += state.expectation(term.shifted(offset));
  return e;
}

std::vector<double> ancilla_marginal(const StateVector& state, int n) {
  const auto anc = qubit_range(0, n);
  return state.marginal_probabilities(anc);
}

// Eigenvalue (+-1 product) of a diagonal-in-basis Pauli string on `bits`.
double string_sign(const PauliTerm& term, std::uint64_t bits) {
  int parity = 0;
  for (const auto& f : term.factors()) parity ^= static_cast<int>((bits >> f.qubit.index) & 1u);
  return parity ? -1.0 : 1.0;
}

bool only_axis(const PauliTerm& t, PauliAxis axis) {
  for (const auto& f : t.factors()) {
    if (f.axis != axis) return false;
  }
  return true;
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // of the single-shot value
};

SampleMoments moments(std::span<const std::uint64_t> counts, std::span<const double> values,
                      std::uint64_t shots) {
  SampleMoments m;
  const double n = static_cast<double>(shots);
  for (std::size_t k = 0; k < counts.size(); ++k) m.mean += static_cast<double>(counts[k]) * values[k];
  m.mean /= n;
  if (shots > 1) {
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double d = values[k] - m.mean;
      m.variance += static_cast<double>(counts[k]) * d * d;
    }
    m.variance /= (n - 1.0);
  }
  return m;
}

}  // namespace

const char* to_string(EvaluationMode::Kind kind) {
  return kind == EvaluationMode::Kind::Exact ? "exact" : "shots";
}

double von_neumann_from_probs(std::span<const double> p) {
  double total = 0.0;
  double s = 0.0;
  for (double x : p) {
    if (!(x >= -1e-12)) throw ArgumentError("probabilities must be nonnegative");
    total += x;
    if (x > 0.0) s -= x * std::log(x);
  }
  if (std::abs(total - 1.0) > 1e-8) throw ArgumentError("probabilities must sum to 1");
  return s;
}

FreeEnergyBreakdown evaluate_exact(const AnsatzConfig& config, const ParameterVector& params,
                                   const Hamiltonian& h, double beta) {
  check_problem(config, params, h, beta);
  const StateVector state = prepare_variational_state(config, params);
  FreeEnergyBreakdown out;
  out.beta = beta;
  out.energy = system_energy(state, h, config.n);
  out.entropy = von_neumann_from_probs(ancilla_marginal(state, config.n));
  out.free_energy = out.energy - out.entropy / beta;
  return out;
}

FreeEnergyBreakdown evaluate_shots(const AnsatzConfig& config, const ParameterVector& params,
                                   const Hamiltonian& h, double beta, const EvaluationMode& mode,
                                   std::uint64_t seed) {
  check_problem(config, params, h, beta);
  const std::uint64_t shots = mode.shots_per_circuit;
  if (shots == 0) throw ArgumentError("shots per circuit must be positive");

  const int n = config.n;
  double constant = 0.0;
  std::vector<const PauliTerm*> x_terms;
  std::vector<const PauliTerm*> z_terms;
  for (const auto& t : h.terms()) {
    if (t.factors().empty()) {
      constant += t.coefficient();
    } else if (only_axis(t, PauliAxis::X)) {
      x_terms.push_back(&t);
    } else if (only_axis(t, PauliAxis::Z)) {
      z_terms.push_back(&t);
    } else {
      throw UnsupportedError("term " + t.to_string() +
                             " is not measurable in the all-X or all-Z setting");
    }
  }

  const StateVector state = prepare_variational_state(config, params);
  const std::uint64_t system_mask = (std::uint64_t{1} << n) - 1;

  // Circuit 1: system register in the X basis.
  StateVector rotated = state;
  for (int q = n; q < 2 * n; ++q) rotated.apply_hadamard(Qubit(q));
  const auto sys = qubit_range(n, n);
  const std::vector<double> px = rotated.marginal_probabilities(sys);
  const auto cx = sample_counts(px, shots, stream_seed(seed, {1}));
  std::vector<double> vx(px.size(), 0.0);
  for (std::uint64_t k = 0; k < px.size(); ++k) {
    for (const PauliTerm* t : x_terms) vx[k] += t->coefficient() * string_sign(*t, k);
  }

  // Circuit 2: computational basis on all 2n qubits.
  const std::vector<double> pz = state.probabilities();
  const auto cz = sample_counts(pz, shots, stream_seed(seed, {2}));
  std::vector<double> vz(pz.size(), 0.0);
  std::vector<std::uint64_t> ancilla_counts(std::size_t{1} << n, 0);
  for (std::uint64_t r = 0; r < pz.size(); ++r) {
    const std::uint64_t system_bits = (r >> n) & system_mask;
    for (const PauliTerm* t : z_terms) vz[r] += t->coefficient() * string_sign(*t, system_bits);
    ancilla_counts[r & system_mask] += cz[r];
  }

  const SampleMoments mx = moments(cx, vx, shots);
  const SampleMoments mz = moments(cz, vz, shots);

  FreeEnergyBreakdown out;
  out.beta = beta;
  out.circuits = 2;
  out.energy = constant + mx.mean + mz.mean;
  out.energy_stderr = std::sqrt((mx.variance + mz.variance) / static_cast<double>(shots));

  double s = 0.0;
  std::size_t observed = 0;
  for (std::uint64_t c : ancilla_counts) {
    if (c == 0) continue;
    ++observed;
    const double p = static_cast<double>(c) / static_cast<double>(shots);
    s -= p * std::log(p);
  }
  if (mode.miller_madow) s += static_cast<double>(observed - 1) / (2.0 * static_cast<double>(shots));
  out.entropy = s;
  out.free_energy = out.energy - out.entropy / beta;
  return out;
}

std::vector<double> gradient_exact(const AnsatzConfig& config, const ParameterVector& params,
                                   const Hamiltonian& h, double beta) {
  check_problem(config, params, h, beta);
  const int n = config.n;
  const std::vector<double> base_p = ancilla_marginal(prepare_variational_state(config, params), n);
  std::vector<double> log_p(base_p.size(), 0.0);
  for (std::size_t i = 0; i < base_p.size(); ++i) {
    log_p[i] = base_p[i] > 0.0 ? std::log(base_p[i]) : 0.0;
  }

  std::vector<double> x = params.flat();
  std::vector<double> grad(x.size(), 0.0);
  constexpr double kShift = std::numbers::pi / 2.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double saved = x[k];
    x[k] = saved + kShift;
    const StateVector plus = prepare_variational_state(config, ParameterVector::from_flat(config, x));
    x[k] = saved - kShift;
    const StateVector minus = prepare_variational_state(config, ParameterVector::from_flat(config, x));
    x[k] = saved;

    double g = 0.5 * (system_energy(plus, h, n) - system_energy(minus, h, n));
    if (k < config.num_theta()) {
      const auto pp = ancilla_marginal(plus, n);
      const auto pm = ancilla_marginal(minus, n);
      double ds = 0.0;
      for (std::size_t i = 0; i < base_p.size(); ++i) ds -= log_p[i] * 0.5 * (pp[i] - pm[i]);
      g -= ds / beta;
    }
    grad[k] = g;
  }
  return grad;
}

std::vector<double> entropy_gradient(const AnsatzConfig& config, const ParameterVector& params) {
  config.validate();
  params.check(config);
  const int n = config.n;
  const std::vector<double> base_p = ancilla_marginal(prepare_variational_state(config, params), n);
  std::vector<double> x = params.flat();
  std::vector<double> grad(x.size(), 0.0);
  constexpr double kShift = std::numbers::pi / 2.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double saved = x[k];
    x[k] = saved + kShift;
    const auto pp = ancilla_marginal(prepare_variational_state(config, ParameterVector::from_flat(config, x)), n);
    x[k] = saved - kShift;
    const auto pm = ancilla_marginal(prepare_variational_state(config, ParameterVector::from_flat(config, x)), n);
    x[k] = saved;
    double ds = 0.0;
    for (std::size_t i = 0; i < base_p.size(); ++i) {
      if (base_p[i] > 0.0) ds -= std::log(base_p[i]) * 0.5 * (pp[i] - pm[i]);
    }
    grad[k] = ds;
  }
  return grad;
}

}  // namespace gibbsvqa
