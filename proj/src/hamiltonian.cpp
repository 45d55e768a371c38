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


#include "gibbsvqa/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <lapacke.h>

#include "gibbsvqa/errors.hpp"

namespace gibbsvqa {

namespace {

using RMatrix = Eigen::MatrixXd;

struct PauliAction {
  std::uint64_t flip = 0;
  std::uint64_t sign_mask = 0;
  int num_y = 0;
  double coefficient = 0.0;
};

PauliAction action_of(const PauliTerm& term) {
  PauliAction a;
  a.coefficient = term.coefficient();
  for (const auto& f : term.factors()) {
    const std::uint64_t bit = std::uint64_t{1} << f.qubit.index;
    if (f.axis != PauliAxis::Z) a.flip |= bit;
    if (f.axis != PauliAxis::X) a.sign_mask |= bit;
    if (f.axis == PauliAxis::Y) ++a.num_y;
  }
  return a;
}

// Phase of P|i> = phase * |i ^ flip>.
Complex phase_of(const PauliAction& a, std::uint64_t i) {
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double sign = (std::popcount(i & a.sign_mask) & 1) ? -1.0 : 1.0;
  return kIPow[a.num_y % 4] * sign;
}

void check_finite(const Hamiltonian& h) {
  for (const auto& t : h.terms()) {
    if (!std::isfinite(t.coefficient())) {
      throw NumericError("non-finite coefficient in term " + t.to_string());
    }
  }
}

void check_dense_limit(int n, int limit) {
  if (n > limit) {
    throw ResourceError("dense representation of " + std::to_string(n) +
                        " qubits exceeds the configured limit of " + std::to_string(limit));
  }
}

// Matrix of `h` restricted to the span of `basis` (rows/cols follow `basis`
// order). `basis` must be closed under every term's action.
template <typename Matrix>
Matrix restricted_matrix(const Hamiltonian& h, const std::vector<std::uint64_t>& basis) {
  using Scalar = typename Matrix::Scalar;
  const auto d = static_cast<Eigen::Index>(basis.size());
  const std::uint64_t full = std::uint64_t{1} << h.num_qubits();
  std::vector<Eigen::Index> position(full, -1);
  for (Eigen::Index k = 0; k < d; ++k) position[basis[static_cast<std::size_t>(k)]] = k;

  Matrix m = Matrix::Zero(d, d);
  for (const auto& term : h.terms()) {
    const PauliAction a = action_of(term);
    for (Eigen::Index col = 0; col < d; ++col) {
      const std::uint64_t i = basis[static_cast<std::size_t>(col)];
      const Eigen::Index row = position[i ^ a.flip];
      const Complex v = a.coefficient * phase_of(a, i);
      if constexpr (std::is_same_v<Scalar, double>) {
        m(row, col) += v.real();
      } else {
        m(row, col) += v;
      }
    }
  }
  return m;
}

struct EigenPairs {
  Eigen::VectorXd values;
  CMatrix vectors;
};

EigenPairs solve_real(RMatrix m, bool want_vectors) {
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U', n,
                                         m.data(), n, w.data());
  if (info != 0) throw NumericError("dsyevd failed with info " + std::to_string(info));
  EigenPairs out;
  out.values = std::move(w);
  if (want_vectors) out.vectors = m.cast<Complex>();
  return out;
}

EigenPairs solve_complex(const CMatrix& m, bool want_vectors) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver did not converge");
  EigenPairs out;
  out.values = es.eigenvalues();
  if (want_vectors) out.vectors = es.eigenvectors();
  return out;
}

EigenPairs solve_block(const Hamiltonian& h, const std::vector<std::uint64_t>& basis,
                       bool want_vectors) {
  if (h.is_real()) return solve_real(restricted_matrix<RMatrix>(h, basis), want_vectors);
  return solve_complex(restricted_matrix<CMatrix>(h, basis), want_vectors);
}

Spectrum assemble(int n, const std::vector<std::vector<std::uint64_t>>& bases,
                  const std::vector<EigenPairs>& blocks, bool want_vectors) {
  struct Level {
    double energy;
    std::size_t block;
    Eigen::Index column;
  };
  std::vector<Level> levels;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Eigen::Index k = 0; k < blocks[b].values.size(); ++k) {
      levels.push_back({blocks[b].values(k), b, k});
    }
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& x, const Level& y) { return x.energy < y.energy; });

  const auto d = static_cast<Eigen::Index>(levels.size());
  Eigen::VectorXd energies(d);
  for (Eigen::Index k = 0; k < d; ++k) energies(k) = levels[static_cast<std::size_t>(k)].energy;
  if (!want_vectors) return Spectrum::energies_only(n, std::move(energies));

  CMatrix vectors = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Level& lv = levels[static_cast<std::size_t>(k)];
    const auto& basis = bases[lv.block];
    for (std::size_t r = 0; r < basis.size(); ++r) {
      vectors(static_cast<Eigen::Index>(basis[r]), k) =
          blocks[lv.block].vectors(static_cast<Eigen::Index>(r), lv.column);
    }
  }
  return Spectrum(n, std::move(energies), std::move(vectors));
}

}  // namespace

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "open") return Boundary::Open;
  throw ArgumentError("boundary must be 'periodic' or 'open', got '" + s + "'");
}

Hamiltonian::Hamiltonian(int num_qubits, std::vector<PauliTerm> terms, Boundary boundary)
    : num_qubits_(num_qubits), terms_(std::move(terms)), boundary_(boundary) {
  if (num_qubits < 1 || num_qubits > 30) throw ArgumentError("Hamiltonian qubit count out of range");
  for (const auto& t : terms_) {
    if (t.span_qubits() > num_qubits_) {
      throw IndexError("term " + t.to_string() + " acts outside " +
                       std::to_string(num_qubits_) + " qubits");
    }
  }
}

bool Hamiltonian::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PauliTerm& t) {
    return action_of(t).num_y % 2 == 0;
  });
}

bool Hamiltonian::conserves_parity() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PauliTerm& t) {
    return std::popcount(action_of(t).flip) % 2 == 0;
  });
}

Hamiltonian build_ising(int n, double h, Boundary boundary) {
  if (n < 2) throw ArgumentError("Ising chain needs n >= 2, got " + std::to_string(n));
  std::vector<PauliTerm> terms;
  auto bond = [&](int a, int b) {
    terms.emplace_back(-1.0, std::vector<PauliFactor>{{Qubit(a), PauliAxis::X},
                                                      {Qubit(b), PauliAxis::X}});
  };
  for (int i = 0; i + 1 < n; ++i) bond(i, i + 1);
  if (boundary == Boundary::Periodic && n >= 3) bond(n - 1, 0);
  for (int i = 0; i < n; ++i) {
    terms.emplace_back(-h, std::vector<PauliFactor>{{Qubit(i), PauliAxis::Z}});
  }
  return Hamiltonian(n, std::move(terms), boundary);
}

CMatrix to_dense(const Hamiltonian& h, int dense_limit) {
  check_dense_limit(h.num_qubits(), dense_limit);
  std::vector<std::uint64_t> basis(std::size_t{1} << h.num_qubits());
  std::iota(basis.begin(), basis.end(), std::uint64_t{0});
  return restricted_matrix<CMatrix>(h, basis);
}

Spectrum::Spectrum(int num_qubits, Eigen::VectorXd energies, CMatrix eigenvectors)
    : num_qubits_(num_qubits), energies_(std::move(energies)), eigenvectors_(std::move(eigenvectors)) {
  if (energies_.size() == 0) throw ArgumentError("empty spectrum");
  for (Eigen::Index i = 1; i < energies_.size(); ++i) {
    if (energies_(i) < energies_(i - 1)) throw ArgumentError("spectrum energies must be ascending");
  }
  if (eigenvectors_.size() > 0 &&
      (eigenvectors_.rows() != energies_.size() || eigenvectors_.cols() != energies_.size())) {
    throw ArgumentError("eigenvector matrix shape does not match energies");
  }
}

Spectrum Spectrum::energies_only(int num_qubits, Eigen::VectorXd energies) {
  return Spectrum(num_qubits, std::move(energies), CMatrix());
}

const CMatrix& Spectrum::eigenvectors() const {
  if (!has_eigenvectors()) throw ArgumentError("spectrum was computed without eigenvectors");
  return eigenvectors_;
}

Spectrum diagonalize(const Hamiltonian& h, DiagonalizeOptions options) {
  check_dense_limit(h.num_qubits(), options.dense_limit);
  check_finite(h);
  const int n = h.num_qubits();
  const std::uint64_t d = std::uint64_t{1} << n;

  std::vector<std::vector<std::uint64_t>> bases;
  if (h.conserves_parity() && n >= 2) {
    bases.resize(2);
    for (std::uint64_t i = 0; i < d; ++i) bases[std::popcount(i) & 1].push_back(i);
  } else {
    bases.emplace_back(d);
    std::iota(bases[0].begin(), bases[0].end(), std::uint64_t{0});
  }
  std::vector<EigenPairs> blocks;
  blocks.reserve(bases.size());
  for (const auto& basis : bases) blocks.push_back(solve_block(h, basis, options.eigenvectors));
  return assemble(n, bases, blocks, options.eigenvectors);
}

Spectrum diagonalize(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
    throw ArgumentError("matrix must be square with dimension >= 2");
  }
  const Eigen::Index d = matrix.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d) throw ArgumentError("matrix dimension must be a power of two");
  if (!matrix.allFinite()) throw NumericError("matrix has non-finite entries");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NumericError("matrix is not Hermitian");
  }
  EigenPairs p = solve_complex(matrix, true);
  return Spectrum(n, std::move(p.values), std::move(p.vectors));
}

double log_partition_function(std::span<const double> energies, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ArgumentError("beta must be finite and >= 0");
  if (energies.empty()) throw ArgumentError("empty spectrum");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  double acc = 0.0;
  for (double e : energies) acc += std::exp(-beta * (e - e0));
  return -beta * e0 + std::log(acc);
}

std::vector<double> boltzmann_probs(std::span<const double> energies, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ArgumentError("beta must be finite and >= 0");
  if (energies.empty()) throw ArgumentError("empty spectrum");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  std::vector<double> p(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    p[i] = std::exp(-beta * (energies[i] - e0));
    z += p[i];
  }
  for (double& x : p) x /= z;
  return p;
}

std::vector<double> boltzmann_probs(const Spectrum& spectrum, double beta) {
  return boltzmann_probs(spectrum.energy_span(), beta);
}

DensityMatrix gibbs_state(const Spectrum& spectrum, double beta) {
  const std::vector<double> p = boltzmann_probs(spectrum, beta);
  const Eigen::Index d = spectrum.dim();
  if (beta == 0.0) return DensityMatrix::maximally_mixed(spectrum.num_qubits());
  const CMatrix& v = spectrum.eigenvectors();
  Eigen::VectorXd w(d);
  for (Eigen::Index i = 0; i < d; ++i) w(i) = p[static_cast<std::size_t>(i)];
  CMatrix rho = v * w.asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(spectrum.num_qubits(), std::move(rho));
}

double exact_free_energy(const Spectrum& spectrum, double beta) {
  if (!(beta > 0.0)) throw ArgumentError("exact free energy needs beta > 0");
  return -log_partition_function(spectrum.energy_span(), beta) / beta;
}

double parity_commutator_norm(const Hamiltonian& h, int dense_limit) {
  const CMatrix m = to_dense(h, dense_limit);
  // P is diagonal with entries (-1)^popcount(i): [H, P]_{ij} = H_ij (s_j - s_i).
  double acc = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const int sj = (std::popcount(static_cast<std::uint64_t>(j)) & 1) ? -1 : 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const int si = (std::popcount(static_cast<std::uint64_t>(i)) & 1) ? -1 : 1;
      acc += std::norm(m(i, j) * static_cast<double>(sj - si));
    }
  }
  return std::sqrt(acc);
}

nlohmann::json spectrum_fixture(const Spectrum& spectrum, double h, Boundary boundary) {
  std::vector<double> e(spectrum.energy_span().begin(), spectrum.energy_span().end());
  return nlohmann::json{{"n", spectrum.num_qubits()},
                        {"h", h},
                        {"boundary", to_string(boundary)},
                        {"energies", e}};
}

}  // namespace gibbsvqa
