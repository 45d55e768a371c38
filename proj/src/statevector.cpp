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


#include "gibbsvqa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "gibbsvqa/errors.hpp"

namespace gibbsvqa {

namespace {

constexpr int kMaxQubits = 30;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

int log2_exact(std::size_t x) {
  int k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ArgumentError("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                        "], got " + std::to_string(num_qubits));
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.size() < 2 || !is_power_of_two(amplitudes.size())) {
    throw ArgumentError("amplitude count must be a power of two >= 2");
  }
  const int q = log2_exact(amplitudes.size());
  if (q > kMaxQubits) throw ArgumentError("too many qubits");
  return StateVector(q, std::move(amplitudes));
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw IndexError("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

void StateVector::check(Qubit q) const {
  if (q.index < 0 || q.index >= num_qubits_) {
    throw IndexError("qubit " + std::to_string(q.index) + " out of range for " +
                     std::to_string(num_qubits_) + "-qubit state");
  }
}

void StateVector::check_pair(Qubit a, Qubit b) const {
  check(a);
  check(b);
  if (a == b) {
    throw InvalidGateError("two-qubit gate on identical qubits " +
                           std::to_string(a.index));
  }
}

void StateVector::apply_ry(Qubit q, double theta) {
  check(q);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::size_t stride = std::size_t{1} << q.index;
  const std::size_t n = amplitudes_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amplitudes_[i];
      const Complex a1 = amplitudes_[i + stride];
      amplitudes_[i] = c * a0 - s * a1;
      amplitudes_[i + stride] = s * a0 + c * a1;
    }
  }
}

void StateVector::apply_hadamard(Qubit q) {
  check(q);
  const double r = 1.0 / std::sqrt(2.0);
  const std::size_t stride = std::size_t{1} << q.index;
  const std::size_t n = amplitudes_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amplitudes_[i];
      const Complex a1 = amplitudes_[i + stride];
      amplitudes_[i] = r * (a0 + a1);
      amplitudes_[i + stride] = r * (a0 - a1);
    }
  }
}

void StateVector::apply_cnot(Qubit control, Qubit target) {
  check_pair(control, target);
  const std::size_t cmask = std::size_t{1} << control.index;
  const std::size_t tmask = std::size_t{1} << target.index;
  const std::size_t n = amplitudes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amplitudes_[i], amplitudes_[i | tmask]);
  }
}

void StateVector::apply_rp(Qubit q1, Qubit q2, double phi_i, double phi_j) {
  check_pair(q1, q2);
  const double cs = std::cos(0.5 * (phi_i + phi_j));
  const double ss = std::sin(0.5 * (phi_i + phi_j));
  const double cd = std::cos(0.5 * (phi_i - phi_j));
  const double sd = std::sin(0.5 * (phi_i - phi_j));
  const std::size_t m1 = std::size_t{1} << q1.index;
  const std::size_t m2 = std::size_t{1} << q2.index;
  const std::size_t n = amplitudes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i & (m1 | m2)) continue;
    const std::size_t i00 = i;
    const std::size_t i01 = i | m2;  // b1 = 0, b2 = 1
    const std::size_t i10 = i | m1;
    const std::size_t i11 = i | m1 | m2;
    const Complex a00 = amplitudes_[i00];
    const Complex a01 = amplitudes_[i01];
    const Complex a10 = amplitudes_[i10];
    const Complex a11 = amplitudes_[i11];
    amplitudes_[i00] = cs * a00 + ss * a11;
    amplitudes_[i11] = -ss * a00 + cs * a11;
    amplitudes_[i01] = cd * a01 - sd * a10;
    amplitudes_[i10] = sd * a01 + cd * a10;
  }
}

double StateVector::expectation(const PauliTerm& term) const {
  std::size_t flip = 0;
  std::size_t zmask = 0;
  std::size_t ymask = 0;
  for (const auto& f : term.factors()) {
    check(f.qubit);
    const std::size_t bit = std::size_t{1} << f.qubit.index;
    switch (f.axis) {
      case PauliAxis::X:
        flip |= bit;
        break;
      case PauliAxis::Y:
        flip |= bit;
        ymask |= bit;
        break;
      case PauliAxis::Z:
        zmask |= bit;
        break;
    }
  }
  // P|i> = phase(i)|i ^ flip>, with Y|b> = i(-1)^b |1-b> and Z|b> = (-1)^b|b>.
  const int num_y = std::popcount(ymask);
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex y_phase = kIPow[num_y % 4];
  Complex acc = 0.0;
  const std::size_t n = amplitudes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int sign_bits = std::popcount(i & (zmask | ymask));
    const double sign = (sign_bits & 1) ? -1.0 : 1.0;
    acc += std::conj(amplitudes_[i ^ flip]) * amplitudes_[i] * sign;
  }
  return term.coefficient() * (y_phase * acc).real();
}

std::vector<double> StateVector::marginal_probabilities(std::span<const Qubit> subset) const {
  if (subset.empty()) throw ArgumentError("marginal over an empty qubit subset");
  for (std::size_t a = 0; a < subset.size(); ++a) {
    check(subset[a]);
    for (std::size_t b = 0; b < a; ++b) {
      if (subset[a] == subset[b]) throw ArgumentError("duplicate qubit in subset");
    }
  }
  std::vector<double> out(std::size_t{1} << subset.size(), 0.0);
  const std::size_t n = amplitudes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    for (std::size_t b = 0; b < subset.size(); ++b) {
      k |= ((i >> subset[b].index) & 1u) << b;
    }
    out[k] += std::norm(amplitudes_[i]);
  }
  return out;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(),
                 [](const Complex& a) { return std::norm(a); });
  return out;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw ArgumentError("inner product of mismatched states");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return acc;
}

DensityMatrix::DensityMatrix(int num_qubits, CMatrix elements)
    : num_qubits_(num_qubits), elements_(std::move(elements)) {
  if (num_qubits < 1) throw ArgumentError("density matrix needs at least one qubit");
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  if (elements_.rows() != d || elements_.cols() != d) {
    throw ArgumentError("density matrix shape does not match qubit count");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  Eigen::Map<const Eigen::VectorXcd> v(state.amplitudes().data(),
                                       static_cast<Eigen::Index>(state.dim()));
  return DensityMatrix(state.num_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  if (!is_power_of_two(probabilities.size()) || probabilities.size() < 2) {
    throw ArgumentError("diagonal length must be a power of two >= 2");
  }
  const auto d = static_cast<Eigen::Index>(probabilities.size());
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
  return DensityMatrix(log2_exact(probabilities.size()), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  if (num_qubits < 1) throw ArgumentError("density matrix needs at least one qubit");
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  return DensityMatrix(num_qubits, CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::hermiticity_error() const {
  return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(elements_.trace() - 1.0); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  const CMatrix herm = 0.5 * (elements_ + elements_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool DensityMatrix::is_valid(double tol) const {
  return hermiticity_error() <= tol && trace_error() <= tol && eigenvalues().minCoeff() >= -tol;
}

DensityMatrix partial_trace(const StateVector& state, std::span<const Qubit> keep) {
  const int q = state.num_qubits();
  if (keep.empty()) throw ArgumentError("partial trace must keep at least one qubit");
  if (static_cast<int>(keep.size()) >= q) {
    throw ArgumentError("partial trace must trace out at least one qubit");
  }
  std::vector<bool> kept(static_cast<std::size_t>(q), false);
  for (const auto& k : keep) {
    if (k.index < 0 || k.index >= q) throw IndexError("kept qubit out of range");
    if (kept[static_cast<std::size_t>(k.index)]) throw ArgumentError("duplicate kept qubit");
    kept[static_cast<std::size_t>(k.index)] = true;
  }
  std::vector<int> traced;
  for (int i = 0; i < q; ++i) {
    if (!kept[static_cast<std::size_t>(i)]) traced.push_back(i);
  }

  // Arrange amplitudes as M[kept index][traced index]; rho = M M^dagger.
  const Eigen::Index dk = Eigen::Index{1} << keep.size();
  const Eigen::Index dt = Eigen::Index{1} << traced.size();
  CMatrix m(dk, dt);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    Eigen::Index r = 0;
    for (std::size_t b = 0; b < keep.size(); ++b) {
      r |= static_cast<Eigen::Index>((i >> keep[b].index) & 1u) << b;
    }
    Eigen::Index c = 0;
    for (std::size_t b = 0; b < traced.size(); ++b) {
      c |= static_cast<Eigen::Index>((i >> traced[b]) & 1u) << b;
    }
    m(r, c) = amps[i];
  }
  return DensityMatrix(static_cast<int>(keep.size()), m * m.adjoint());
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities,
                                         std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw ArgumentError("shot count must be positive");
  if (probabilities.empty()) throw ArgumentError("empty probability vector");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= -1e-12)) throw ArgumentError("negative or non-finite probability");
    total += std::max(p, 0.0);
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw ArgumentError("probabilities must sum to 1 (got " + std::to_string(total) + ")");
  }

  std::size_t last = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] > 0.0) last = k;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  std::uint64_t remaining = shots;
  double mass_left = total;
  // Conditional binomial decomposition of the multinomial.
  for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
    const double p = std::max(probabilities[k], 0.0);
    if (k == last) {
      counts[k] = remaining;
      break;
    }
    if (p == 0.0) continue;
    const double cond = std::clamp(p / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> binom(remaining, cond);
    const std::uint64_t c = binom(rng);
    counts[k] = c;
    remaining -= c;
    mass_left -= p;
  }
  return counts;
}

std::vector<Qubit> qubit_range(int first, int count) {
  std::vector<Qubit> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.emplace_back(first + i);
  return out;
}

}  // namespace gibbsvqa
