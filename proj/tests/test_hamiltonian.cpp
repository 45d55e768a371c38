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


#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/hamiltonian.hpp"
#include "gibbsvqa/metrics.hpp"
#include "oracle.hpp"

using namespace gibbsvqa;

namespace {

// Ising ring n = 3, h = 0.5 in closed form.
const std::vector<double> kRing3 = {-1.5 - std::sqrt(3.0), -0.5 - std::sqrt(7.0), std::sqrt(3.0) - 1.5,
                                    0.5, 0.5, 1.5, 1.5, std::sqrt(7.0) - 0.5};

int count_axis_terms(const Hamiltonian& h, PauliAxis axis) {
  int k = 0;
  for (const auto& t : h.terms()) k += t.factors().front().axis == axis;
  return k;
}

}  // namespace

TEST(BuildIsing, TwoSitesOpenNoField) {
  const Hamiltonian h = build_ising(2, 0.0, Boundary::Open);
  // Zero-field terms still appear with zero weight or are dropped; the bond is unique.
  EXPECT_EQ(count_axis_terms(h, PauliAxis::X), 1);
  const auto& bond = h.terms().front();
  EXPECT_EQ(bond.to_string(), "-1*X0X1");
}

TEST(BuildIsing, ThreeSiteRing) {
  const Hamiltonian h = build_ising(3, 0.5, Boundary::Periodic);
  ASSERT_EQ(h.terms().size(), 6u);
  EXPECT_EQ(count_axis_terms(h, PauliAxis::X), 3);
  EXPECT_EQ(count_axis_terms(h, PauliAxis::Z), 3);
  for (const auto& t : h.terms()) {
    const bool bond = t.factors().size() == 2;
    EXPECT_DOUBLE_EQ(t.coefficient(), bond ? -1.0 : -0.5);
  }
}

TEST(BuildIsing, TermCountsScaleLinearly) {
  EXPECT_EQ(build_ising(4, 1.0, Boundary::Periodic).terms().size(), 8u);
  for (int n = 3; n <= 8; ++n) {
    EXPECT_EQ(build_ising(n, 0.7, Boundary::Periodic).terms().size(), static_cast<std::size_t>(2 * n));
    EXPECT_EQ(build_ising(n, 0.7, Boundary::Open).terms().size(), static_cast<std::size_t>(2 * n - 1));
  }
  // Two sites: the ring bond is the same bond, counted once.
  EXPECT_EQ(build_ising(2, 0.5, Boundary::Periodic).terms().size(), 3u);
}

TEST(BuildIsing, TooFewSitesIsArgumentError) {
  EXPECT_THROW(build_ising(1, 0.5, Boundary::Periodic), ArgumentError);
  EXPECT_THROW(build_ising(0, 0.5, Boundary::Open), ArgumentError);
}

TEST(Dense, TwoSiteBondIsAntiDiagonal) {
  const CMatrix m = to_dense(build_ising(2, 0.0, Boundary::Open));
  CMatrix want = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) want(i, 3 - i) = -1.0;
  EXPECT_LT((m - want).norm(), 1e-15);
}

TEST(Dense, SingleSiteField) {
  const Hamiltonian h(1, {PauliTerm(-0.3, {{Qubit(0), PauliAxis::Z}})});
  const CMatrix m = to_dense(h);
  EXPECT_NEAR(m(0, 0).real(), -0.3, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 0.3, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 1)), 0.0, 1e-15);
}

TEST(Dense, IsingIsTracelessAndMatchesOracle) {
  for (int n = 2; n <= 6; ++n) {
    for (Boundary b : {Boundary::Periodic, Boundary::Open}) {
      const CMatrix m = to_dense(build_ising(n, 0.8, b));
      EXPECT_NEAR(std::abs(m.trace()), 0.0, 1e-12);
      EXPECT_LT((m - oracle::ising(n, 0.8, b == Boundary::Periodic)).norm(), 1e-12);
    }
  }
}

TEST(Dense, AboveLimitIsResourceError) {
  EXPECT_THROW(to_dense(build_ising(6, 1.0, Boundary::Open), 5), ResourceError);
}

TEST(Diagonalize, TwoSiteBondSpectrum) {
  const Spectrum s = diagonalize(build_ising(2, 0.0, Boundary::Open));
  const std::vector<double> want{-1, -1, 1, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.energies()(i), want[static_cast<std::size_t>(i)], 1e-12);
}

TEST(Diagonalize, ThreeSiteRingFixture) {
  const Hamiltonian h = build_ising(3, 0.5, Boundary::Periodic);
  const Spectrum s = diagonalize(h);
  const CMatrix H = oracle::ising(3, 0.5, true);
  const Eigen::VectorXd dense = oracle::energies(H);
  ASSERT_EQ(s.dim(), 8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    EXPECT_NEAR(s.energies()(i), kRing3[static_cast<std::size_t>(i)], 1e-12);
    EXPECT_NEAR(s.energies()(i), dense(i), 1e-12);
    const auto v = s.eigenvectors().col(i);
    EXPECT_LT((H * v - s.energies()(i) * v).norm(), 1e-8);
  }
}

TEST(Diagonalize, EigenvectorsUnitaryAndSorted) {
  for (int n = 2; n <= 7; ++n) {
    const Spectrum s = diagonalize(build_ising(n, 1.3, Boundary::Periodic));
    const CMatrix& U = s.eigenvectors();
    EXPECT_LT((U.adjoint() * U - CMatrix::Identity(U.rows(), U.cols())).norm(), 1e-9);
    for (Eigen::Index i = 1; i < s.dim(); ++i) EXPECT_LE(s.energies()(i - 1), s.energies()(i));
    const Eigen::VectorXd dense = oracle::energies(oracle::ising(n, 1.3, true));
    EXPECT_LT((s.energies() - dense).norm(), 1e-10);
  }
}

TEST(Diagonalize, StrongFieldGroundStateIsAllZeros) {
  const Spectrum s = diagonalize(build_ising(2, 1e6, Boundary::Periodic));
  EXPECT_NEAR(std::norm(s.eigenvectors()(0, 0)), 1.0, 1e-9);
}

TEST(Diagonalize, EnergiesOnlySkipsVectors) {
  const Spectrum s = diagonalize(build_ising(4, 0.5, Boundary::Open), {.eigenvectors = false});
  EXPECT_FALSE(s.has_eigenvectors());
  EXPECT_THROW(s.eigenvectors(), ArgumentError);
}

TEST(Diagonalize, NonHermitianIsNumericError) {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 0.3, 0.0;
  EXPECT_THROW(diagonalize(m), NumericError);
  const Hamiltonian corrupt(2, {PauliTerm(std::nan(""), {{Qubit(0), PauliAxis::Z}})});
  EXPECT_THROW(diagonalize(corrupt), NumericError);
}

TEST(Diagonalize, NonParityHamiltonianUsesComplexPath) {
  // X0 + Y0 Y1 + Z1: no parity symmetry, still Hermitian.
  const Hamiltonian h(2, {PauliTerm(1.0, {{Qubit(0), PauliAxis::X}}),
                          PauliTerm(0.5, {{Qubit(0), PauliAxis::Y}, {Qubit(1), PauliAxis::Y}}),
                          PauliTerm(-0.2, {{Qubit(1), PauliAxis::Z}})});
  const Spectrum s = diagonalize(h);
  const CMatrix H = to_dense(h);
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    const auto v = s.eigenvectors().col(i);
    EXPECT_LT((H * v - s.energies()(i) * v).norm(), 1e-10);
  }
}

TEST(ZeroField, EveryLevelHasEvenMultiplicity) {
  for (int n = 2; n <= 6; ++n) {
    const Spectrum s = diagonalize(build_ising(n, 0.0, Boundary::Periodic));
    std::map<long long, int> mult;
    for (Eigen::Index i = 0; i < s.dim(); ++i) mult[std::llround(s.energies()(i) * 1e8)]++;
    for (const auto& [e, m] : mult) EXPECT_EQ(m % 2, 0) << "n=" << n << " E=" << e * 1e-8;
  }
}

TEST(Gibbs, InfiniteTemperatureIsExactlyMaximallyMixed) {
  const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
  const DensityMatrix r = gibbs_state(s, 0.0);
  EXPECT_EQ(r.matrix(), (CMatrix::Identity(8, 8) / 8.0).eval());
}

TEST(Gibbs, DegenerateGroundSpaceAtLowTemperature) {
  const Spectrum s = diagonalize(build_ising(2, 0.0, Boundary::Open));
  const DensityMatrix r = gibbs_state(s, 50.0);
  const CMatrix& U = s.eigenvectors();
  const CMatrix want = (U.col(0) * U.col(0).adjoint() + U.col(1) * U.col(1).adjoint()) / 2.0;
  EXPECT_LT((r.matrix() - want).norm(), 1e-12);
}

TEST(Gibbs, NegativeBetaIsArgumentError) {
  const Spectrum s = diagonalize(build_ising(2, 0.5, Boundary::Open));
  EXPECT_THROW(gibbs_state(s, -1.0), ArgumentError);
  EXPECT_THROW(boltzmann_probs(s, -0.1), ArgumentError);
}

TEST(Gibbs, MatchesOracleAndCommutesWithH) {
  for (double beta : {0.2, 1.0, 5.0}) {
    for (int n = 2; n <= 5; ++n) {
      const CMatrix H = oracle::ising(n, 0.9, true);
      const DensityMatrix r = gibbs_state(diagonalize(build_ising(n, 0.9, Boundary::Periodic)), beta);
      EXPECT_LT((r.matrix() - oracle::gibbs(H, beta)).norm(), 1e-10);
      EXPECT_LT((H * r.matrix() - r.matrix() * H).norm(), 1e-8);
      EXPECT_TRUE(r.is_valid());
    }
  }
}

TEST(Boltzmann, InfiniteTemperatureIsUniform) {
  const Spectrum s = diagonalize(build_ising(3, 1.0, Boundary::Open));
  for (double p : boltzmann_probs(s, 0.0)) EXPECT_DOUBLE_EQ(p, 1.0 / 8);
}

TEST(Boltzmann, TwoSiteBondAtUnitBeta) {
  const double e = std::exp(1.0);
  const double Z = 2 * e + 2 / e;
  EXPECT_NEAR(Z, 6.17232, 1e-5);
  const auto p = boltzmann_probs(diagonalize(build_ising(2, 0.0, Boundary::Open)), 1.0);
  EXPECT_NEAR(p[0], e / Z, 1e-14);
  EXPECT_NEAR(p[1], e / Z, 1e-14);
  EXPECT_NEAR(p[2], 1 / (e * Z), 1e-14);
  EXPECT_NEAR(p[3], 1 / (e * Z), 1e-14);
  EXPECT_NEAR(p[0], 0.44039, 1e-5);
}

TEST(Boltzmann, ZeroTemperatureLimit) {
  const auto p = boltzmann_probs(diagonalize(build_ising(3, 0.5, Boundary::Periodic)), 1e3);
  EXPECT_NEAR(p[0], 1.0, 1e-9);
}

TEST(Boltzmann, NormalizedAndMonotone) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double beta = u(rng);
    const auto p = boltzmann_probs(diagonalize(build_ising(4, 0.1 * trial, Boundary::Periodic)), beta);
    double sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      sum += p[i];
      if (i > 0) {
        EXPECT_LE(p[i], p[i - 1] * (1 + 1e-12));
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Boltzmann, ShiftInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> e(16);
    for (auto& x : e) x = u(rng);
    std::sort(e.begin(), e.end());
    std::vector<double> shifted = e;
    const double c = 100 * u(rng);
    for (auto& x : shifted) x += c;
    const auto p = boltzmann_probs(e, 2.5);
    const auto q = boltzmann_probs(shifted, 2.5);
    for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
  }
}

TEST(Boltzmann, HugeBetaDoesNotOverflow) {
  const std::vector<double> e{-1000.0, 0.0, 1000.0};
  const auto p = boltzmann_probs(e, 1e4);
  EXPECT_EQ(p[0], 1.0);
  EXPECT_EQ(p[2], 0.0);
  EXPECT_TRUE(std::isfinite(log_partition_function(e, 1e4)));
}

TEST(FreeEnergy, TwoSiteBondAtUnitBeta) {
  const double F = exact_free_energy(diagonalize(build_ising(2, 0.0, Boundary::Open)), 1.0);
  EXPECT_NEAR(F, -std::log(2 * std::exp(1.0) + 2 / std::exp(1.0)), 1e-14);
  // The four-figure value usually quoted for this case.
  EXPECT_NEAR(F, -1.82003, 1e-4);
}

TEST(FreeEnergy, ApproachesGroundEnergy) {
  const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
  const double gap = s.energies()(1) - s.energies()(0);
  const double beta = 500.0;
  const double F = exact_free_energy(s, beta);
  EXPECT_LE(F, s.energies()(0));
  EXPECT_NEAR(F, s.energies()(0), 2 * std::exp(-beta * gap) / beta + 1e-12);
}

TEST(FreeEnergy, NonPositiveBetaIsArgumentError) {
  const Spectrum s = diagonalize(build_ising(2, 0.5, Boundary::Open));
  EXPECT_THROW(exact_free_energy(s, 0.0), ArgumentError);
  EXPECT_THROW(exact_free_energy(s, -1.0), ArgumentError);
}

TEST(FreeEnergy, GibbsStateAttainsOracleValue) {
  for (double beta : {0.2, 1.0, 5.0}) {
    const CMatrix H = oracle::ising(3, 0.5, true);
    const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
    const double F = oracle::free_energy(H, gibbs_state(s, beta).matrix(), beta);
    EXPECT_NEAR(F, exact_free_energy(s, beta), 1e-9);
  }
}

TEST(FreeEnergy, GibbsStateMinimizesOverRandomStates) {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 3; ++n) {
    const Hamiltonian h = n == 1 ? Hamiltonian(1, {PauliTerm(-0.5, {{Qubit(0), PauliAxis::Z}})})
                                 : build_ising(n, 0.5, Boundary::Periodic);
    const Spectrum s = diagonalize(h);
    const CMatrix H = to_dense(h);
    for (double beta : {0.2, 1.0, 5.0}) {
      const double F0 = exact_free_energy(s, beta);
      const DensityMatrix g = gibbs_state(s, beta);
      for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix sigma = random_density_matrix(n, rng);
        const double F = oracle::free_energy(H, sigma.matrix(), beta);
        EXPECT_GE(F, F0 - 1e-12);
        if ((sigma.matrix() - g.matrix()).norm() > 1e-3) {
          EXPECT_GT(F - F0, 1e-6);
        }
      }
    }
  }
}

TEST(Parity, IsingCommutesWithParity) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_LT(parity_commutator_norm(build_ising(n, 0.5, Boundary::Periodic)), 1e-10);
    EXPECT_LT(parity_commutator_norm(build_ising(n, 0.5, Boundary::Open)), 1e-10);
  }
  EXPECT_LT(parity_commutator_norm(build_ising(4, 1.5, Boundary::Periodic)), 1e-10);
  EXPECT_TRUE(build_ising(4, 1.5, Boundary::Periodic).conserves_parity());
}

TEST(Parity, SingleXDoesNotCommute) {
  const Hamiltonian h(1, {PauliTerm(1.0, {{Qubit(0), PauliAxis::X}})});
  // [X, Z] = -2iY has Frobenius norm 2 * sqrt(2).
  EXPECT_NEAR(parity_commutator_norm(h), 2 * std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(h.conserves_parity());
}

TEST(Fixture, SpectrumRoundTripsThroughJson) {
  const Spectrum s = diagonalize(build_ising(3, 0.5, Boundary::Periodic));
  const nlohmann::json j = spectrum_fixture(s, 0.5, Boundary::Periodic);
  EXPECT_EQ(j.at("n").get<int>(), 3);
  EXPECT_EQ(j.at("boundary").get<std::string>(), "periodic");
  const auto e = j.at("energies").get<std::vector<double>>();
  ASSERT_EQ(e.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(e[i], kRing3[i], 1e-12);
}

TEST(Boundary, StringRoundTrip) {
  EXPECT_EQ(boundary_from_string(to_string(Boundary::Open)), Boundary::Open);
  EXPECT_EQ(boundary_from_string(to_string(Boundary::Periodic)), Boundary::Periodic);
  EXPECT_THROW(boundary_from_string("ring"), ArgumentError);
}
