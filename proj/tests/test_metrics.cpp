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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/metrics.hpp"
#include "gibbsvqa/objective.hpp"
#include "oracle.hpp"

using namespace gibbsvqa;

namespace {

DensityMatrix basis(int n, Eigen::Index k) {
  CMatrix m = CMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  m(k, k) = 1;
  return DensityMatrix(n, m);
}

DensityMatrix conj_by(const CMatrix& u, const DensityMatrix& r) {
  return DensityMatrix(r.num_qubits(), u * r.matrix() * u.adjoint());
}

double exact_f(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
  const CMatrix H = to_dense(h);
  return (H * rho.matrix()).trace().real() - von_neumann_entropy(rho) / beta;
}

}  // namespace

TEST(Fidelity, Examples) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    const DensityMatrix r = random_density_matrix(n, rng);
    EXPECT_NEAR(fidelity(r, r), 1.0, 1e-10);
  }
  EXPECT_NEAR(fidelity(basis(1, 0), basis(1, 1)), 0.0, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(1), basis(1, 0)), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(basis(1, 0), DensityMatrix::maximally_mixed(1)), 0.5, 1e-12);
}

TEST(Fidelity, PureStatesGiveOverlap) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(8), b(8);
    for (auto& v : a) v = {g(rng), g(rng)};
    for (auto& v : b) v = {g(rng), g(rng)};
    for (auto* w : {&a, &b}) {
      double nn = 0;
      for (const auto& v : *w) nn += std::norm(v);
      for (auto& v : *w) v /= std::sqrt(nn);
    }
    const StateVector sa = StateVector::from_amplitudes(a), sb = StateVector::from_amplitudes(b);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(sa), DensityMatrix::pure(sb)), std::norm(sa.inner(sb)), 1e-9);
  }
}

TEST(Fidelity, SymmetricAndBasisInvariant) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const DensityMatrix a = random_density_matrix(n, rng), b = random_density_matrix(n, rng);
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_NEAR(f, fidelity(b, a), 1e-9);
    const CMatrix u = random_unitary(a.dim(), rng);
    EXPECT_NEAR(f, fidelity(conj_by(u, a), conj_by(u, b)), 1e-9);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(conj_by(u, a), conj_by(u, b)), 1e-10);
  }
}

TEST(Fidelity, DiagonalStatesMatchClassical) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> p(8), q(8);
    for (auto& v : p) v = u(rng);
    for (auto& v : q) v = u(rng);
    if (t % 3 == 0) p[t % 8] = 0;
    const double sp = std::accumulate(p.begin(), p.end(), 0.0), sq = std::accumulate(q.begin(), q.end(), 0.0);
    for (auto& v : p) v /= sp;
    for (auto& v : q) v /= sq;
    double bc = 0;
    for (int i = 0; i < 8; ++i) bc += std::sqrt(p[i] * q[i]);
    EXPECT_NEAR(classical_fidelity(p, q), bc * bc, 1e-14);
    EXPECT_NEAR(fidelity(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)), bc * bc, 1e-10);
  }
}

TEST(Metrics, DimensionMismatch) {
  const DensityMatrix a = DensityMatrix::maximally_mixed(1), b = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(fidelity(a, b), ArgumentError);
  EXPECT_THROW(trace_distance(a, b), ArgumentError);
  EXPECT_THROW(relative_entropy(a, b), ArgumentError);
}

TEST(TraceDistance, Examples) {
  std::mt19937_64 rng(1);
  const DensityMatrix r = random_density_matrix(2, rng);
  EXPECT_NEAR(trace_distance(r, r), 0.0, 1e-12);
  EXPECT_NEAR(trace_distance(basis(2, 1), basis(2, 2)), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(basis(1, 0), DensityMatrix::maximally_mixed(1)), 0.5, 1e-12);
}

TEST(TraceDistance, FuchsVanDeGraaff) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const DensityMatrix a = random_density_matrix(n, rng), b = random_density_matrix(n, rng);
    const double f = fidelity(a, b), d = trace_distance(a, b);
    EXPECT_LE(1 - std::sqrt(f), d + 1e-10);
    EXPECT_LE(d, std::sqrt(1 - f) + 1e-10);
  }
}

TEST(RelativeEntropy, Examples) {
  std::mt19937_64 rng(2);
  const DensityMatrix r = random_density_matrix(2, rng);
  EXPECT_NEAR(relative_entropy(r, r), 0.0, 1e-10);
  EXPECT_NEAR(relative_entropy(basis(1, 0), DensityMatrix::maximally_mixed(1)), std::log(2.0), 1e-12);
  EXPECT_TRUE(std::isinf(relative_entropy(DensityMatrix::maximally_mixed(1), basis(1, 0))));
  EXPECT_TRUE(std::isinf(relative_entropy(basis(1, 1), basis(1, 0))));
  EXPECT_GE(relative_entropy(random_density_matrix(2, rng), r), 0.0);
}

TEST(RelativeEntropy, FreeEnergyIdentity) {
  std::mt19937_64 rng(4);
  for (int n : {2, 3}) {
    const Hamiltonian h = build_ising(n, 0.5, Boundary::Periodic);
    const Spectrum s = diagonalize(h);
    for (double beta : {0.3, 1.0, 4.0}) {
      const DensityMatrix g = gibbs_state(s, beta);
      const double fg = exact_free_energy(s, beta);
      EXPECT_NEAR(exact_f(g, h, beta), fg, 1e-10);
      for (int t = 0; t < 10; ++t) {
        const DensityMatrix r = random_density_matrix(n, rng);
        EXPECT_NEAR(relative_entropy(r, g), beta * (exact_f(r, h, beta) - fg), 1e-8);
      }
    }
  }
}

TEST(Entropy, MatchesOracle) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix r = random_density_matrix(1 + t % 3, rng);
    EXPECT_NEAR(von_neumann_entropy(r), oracle::vn_entropy(r.matrix()), 1e-10);
  }
}

TEST(RandomDensityMatrix, IsValid) {
  std::mt19937_64 a(12), b(12);
  for (int n = 1; n <= 4; ++n) {
    const DensityMatrix r = random_density_matrix(n, a);
    EXPECT_TRUE(r.is_valid(1e-10));
    EXPECT_EQ(r.matrix(), random_density_matrix(n, b).matrix());
  }
  std::mt19937_64 rng(1);
  const CMatrix u = random_unitary(8, rng);
  EXPECT_LT((u.adjoint() * u - CMatrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(CvBoltzmann, HighTemperatureLimit) {
  const Spectrum s = diagonalize(build_ising(2, 0.5, Boundary::Periodic));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(cv_boltzmann(s, 0.0, 1024, i), std::sqrt(3.0 / 1024), 1e-15);
  EXPECT_NEAR(cv_boltzmann(s, 0.0, 1024, 0), 0.054127, 5e-7);
  const Spectrum s4 = diagonalize(build_ising(4, 0.5, Boundary::Periodic));
  EXPECT_NEAR(cv_boltzmann(s4, 0.0, 100, 7), std::sqrt(15.0 / 100), 1e-14);
}

TEST(CvBoltzmann, LowTemperatureLimit) {
  const Spectrum s = diagonalize(build_ising(4, 2.0, Boundary::Periodic));
  EXPECT_LT(cv_boltzmann(s, 100.0, 1024, 0), 1e-12);
  EXPECT_TRUE(std::isfinite(cv_boltzmann(s, 1e4, 1024, 0)));
  EXPECT_GT(cv_boltzmann(s, 100.0, 1024, 15), 1e10);
}

TEST(CvBoltzmann, GroundStateNonincreasingInBeta) {
  for (int n : {3, 4, 6}) {
    const Spectrum s = diagonalize(build_ising(n, 0.5, Boundary::Periodic), {.eigenvectors = false});
    double prev = cv_boltzmann(s, 0.0, 1024, 0);
    for (double beta = 0.05; beta < 50; beta *= 1.3) {
      const double c = cv_boltzmann(s, beta, 1024, 0);
      EXPECT_LE(c, prev + 1e-15);
      prev = c;
    }
  }
}

TEST(CvBoltzmann, MatchesMonteCarlo) {
  const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
  const double beta = 0.7;
  const std::uint64_t shots = 1024;
  const auto p = boltzmann_probs(s, beta);
  for (std::size_t i : {0u, 3u, 7u}) {
    double m = 0, m2 = 0;
    const int seeds = 2000;
    for (int k = 0; k < seeds; ++k) {
      const double c = static_cast<double>(sample_counts(p, shots, 1000 + k)[i]);
      m += c;
      m2 += c * c;
    }
    m /= seeds;
    const double sd = std::sqrt((m2 / seeds - m * m) * seeds / (seeds - 1));
    EXPECT_NEAR(sd / m, cv_boltzmann(s, beta, shots, i), 0.1 * cv_boltzmann(s, beta, shots, i)) << i;
  }
}

TEST(FitPowerLaw, ExactPowerLaw) {
  const std::vector<int> n{2, 4, 8, 16};
  std::vector<double> y;
  for (int k : n) y.push_back(3.0 * std::pow(k, 1.5));
  const FitResult f = fit_power_law(n, y);
  EXPECT_NEAR(f.exponent, 1.5, 1e-12);
  EXPECT_NEAR(f.prefactor, 3.0, 1e-11);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(FitPowerLaw, NeedsThreeSizes) {
  EXPECT_THROW(fit_power_law(std::vector<int>{2, 3}, std::vector<double>{1, 2}), ArgumentError);
  EXPECT_THROW(fit_cv_exponent(0.5, 1.0, 0, std::vector<int>{4, 6}, 1024), ArgumentError);
}

TEST(FitCvExponent, HighTemperatureIsNotAPowerLaw) {
  const FitResult narrow = fit_cv_exponent(0.5, 0.0, 0, std::vector<int>{2, 3, 4}, 1024);
  const FitResult wide = fit_cv_exponent(0.5, 0.0, 0, std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10}, 1024);
  EXPECT_GT(wide.exponent, narrow.exponent);
  EXPECT_LT(wide.r_squared, narrow.r_squared);
}

TEST(FitCvExponent, ModerateTemperature) {
  const FitResult f = fit_cv_exponent(0.5, 1.0, 0, std::vector<int>{6, 8, 10, 12}, 1024);
  EXPECT_TRUE(std::isfinite(f.exponent));
  EXPECT_GT(f.r_squared, 0.9);
  EXPECT_GT(f.prefactor, 0.0);
  EXPECT_EQ(f.n_values, (std::vector<int>{6, 8, 10, 12}));
}

TEST(ConstraintGap, Examples) {
  EXPECT_EQ(product_ansatz_constraint_gap(std::vector<double>{0, 1, 2, 3}), 0.0);
  EXPECT_EQ(product_ansatz_constraint_gap(std::vector<double>{3, 0, 2, 1, 9}), 0.0);
  const double gap = product_ansatz_constraint_gap(diagonalize(build_ising(3, 0.5, Boundary::Periodic)));
  EXPECT_NEAR(gap, 1 + std::sqrt(7.0) - 2 * std::sqrt(3.0), 1e-12);
  EXPECT_GT(gap, 1e-6);
  EXPECT_NEAR(product_ansatz_constraint_gap(diagonalize(build_ising(3, 0.0, Boundary::Periodic))), 0.0, 1e-12);
  EXPECT_THROW(product_ansatz_constraint_gap(std::vector<double>{0, 1, 2}), ArgumentError);
}

TEST(ConstraintGap, ProductDistributionsSatisfyIt) {
  // Any product distribution over two bits has ln q00 + ln q11 = ln q01 + ln q10.
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto q = product_distribution(oracle::uniform_angles(2, rng));
    EXPECT_NEAR(q[0] * q[3], q[1] * q[2], 1e-15);
  }
}

TEST(ProductDistribution, BitOrder) {
  const auto q = product_distribution(std::vector<double>{M_PI, 0.0, M_PI / 2});
  EXPECT_NEAR(q[0b001], 0.5, 1e-15);
  EXPECT_NEAR(q[0b101], 0.5, 1e-15);
  EXPECT_NEAR(std::accumulate(q.begin(), q.end(), 0.0), 1.0, 1e-15);
}

TEST(ProductFidelity, InfiniteTemperatureIsProduct) {
  const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
  EXPECT_NEAR(best_product_distribution_fidelity(s, 0.0, 20), 1.0, 1e-10);
}

TEST(ProductFidelity, EntanglingLayerIsNeeded) {
  const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
  const double prod = best_product_distribution_fidelity(s, 1.0, 200);
  const double delta = 1 - prod;
  EXPECT_NEAR(delta, 4.3154e-3, 1e-6);
  const auto p = boltzmann_probs(s, 1.0);
  const double one_layer = best_ancilla_distribution_fidelity(p, 3, 1, 50);
  EXPECT_GT(one_layer, 1 - delta / 10);
  EXPECT_NEAR(one_layer, 0.99981027, 1e-7);
  EXPECT_NEAR(best_ancilla_distribution_fidelity(p, 3, 2, 50), 1.0, 1e-8);
}

TEST(AncillaFidelity, ReachesEntangledDistributions) {
  // Distributions the ansatz produces exactly, including ones whose
  // amplitudes carry mixed signs.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    AnsatzConfig c;
    c.n = 3;
    const auto theta = oracle::uniform_angles(c.num_theta(), rng);
    StateVector s(3);
    apply_ancilla_ansatz(s, c, theta);
    EXPECT_NEAR(best_ancilla_distribution_fidelity(s.probabilities(), 3, 1, 30), 1.0, 1e-8);
  }
  const std::vector<double> ghz{0.5, 0, 0, 0, 0, 0, 0, 0.5};
  EXPECT_NEAR(best_ancilla_distribution_fidelity(ghz, 3, 1, 30), 1.0, 1e-8);
  EXPECT_LT(classical_fidelity(ghz, product_distribution(std::vector<double>{M_PI / 2, M_PI / 2, M_PI / 2})), 0.3);
  EXPECT_THROW(best_ancilla_distribution_fidelity(ghz, 2, 1, 1), ArgumentError);
}
