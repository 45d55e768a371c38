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
#include <limits>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gibbsvqa/harness.hpp"
#include "gibbsvqa/optimizer.hpp"
#include "gibbsvqa/random.hpp"
#include "oracle.hpp"

using namespace gibbsvqa;

namespace {

double quadratic(std::span<const double> x, std::span<double> g) {
  double f = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f += (x[i] - 1) * (x[i] - 1);
    g[i] = 2 * (x[i] - 1);
  }
  return f;
}

double rosenbrock(std::span<const double> x, std::span<double> g) {
  const double a = 1 - x[0], b = x[1] - x[0] * x[0];
  g[0] = -2 * a - 400 * x[0] * b;
  g[1] = 200 * b;
  return a * a + 100 * b * b;
}

double sq_norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

Problem ising_problem(int n, double beta) {
  const AnsatzConfig cfg = AnsatzConfig::defaults_for(n);
  const Hamiltonian h = build_ising(n, 0.5, Boundary::Periodic);
  Problem p;
  p.dimension = cfg.num_params();
  p.exact = [cfg, h, beta](std::span<const double> x, std::span<double> g) {
    const ParameterVector pv = ParameterVector::from_flat(cfg, x);
    const auto grad = gradient_exact(cfg, pv, h, beta);
    std::copy(grad.begin(), grad.end(), g.begin());
    return evaluate_exact(cfg, pv, h, beta).free_energy;
  };
  p.noisy = [cfg, h, beta](std::span<const double> x, std::uint64_t s) {
    return evaluate_shots(cfg, ParameterVector::from_flat(cfg, x), h, beta,
                          EvaluationMode::shots(256), s)
        .free_energy;
  };
  return p;
}

OptimizerSettings spsa(int iters) {
  OptimizerSettings s;
  s.algorithm = Algorithm::Spsa;
  s.max_iterations = iters;
  return s;
}

}  // namespace

TEST(Bfgs, QuadraticConvergesQuickly) {
  OptimizerSettings s;
  s.max_iterations = 20;
  const RunRecord r = bfgs_minimize(quadratic, std::vector<double>(6, 0.0), s);
  EXPECT_FALSE(r.failed);
  EXPECT_LT(r.final_free_energy, 1e-12);
  EXPECT_LE(r.iteration_count, 20);
  for (double v : r.final_params) EXPECT_NEAR(v, 1.0, 1e-6);
}

TEST(Bfgs, Rosenbrock) {
  const RunRecord r = bfgs_minimize(rosenbrock, {-1.2, 1.0}, OptimizerSettings{});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.final_params[0], 1.0, 1e-6);
  EXPECT_NEAR(r.final_params[1], 1.0, 1e-6);
}

TEST(Bfgs, IteratesAreMonotone) {
  std::vector<double> seen;
  OptimizerSettings s;
  s.observer = [&](long long, double v) { seen.push_back(v); };
  const RunRecord r = bfgs_minimize(rosenbrock, {-1.2, 1.0}, s);
  ASSERT_GE(seen.size(), 2u);
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LE(seen[i], seen[i - 1]);
  EXPECT_LE(r.final_free_energy, seen.front());

  seen.clear();
  const Problem p = ising_problem(3, 2.0);
  const RunRecord q = bfgs_minimize(p.exact, initial_point(p.dimension, 9), s);
  ASSERT_GE(seen.size(), 2u);
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LE(seen[i], seen[i - 1] + 1e-14);
  EXPECT_LE(q.final_free_energy, seen.front());
}

TEST(Bfgs, NonFiniteObjectiveFails) {
  auto bad = [](std::span<const double> x, std::span<double> g) {
    g[0] = 1;
    return x[0] < 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0];
  };
  const RunRecord r = bfgs_minimize(bad, {1.0}, OptimizerSettings{});
  EXPECT_TRUE(r.failed);
  EXPECT_FALSE(r.diagnostic.empty());
  const RunRecord r0 = bfgs_minimize(bad, {0.0}, OptimizerSettings{});
  EXPECT_TRUE(r0.failed);
}

TEST(Bfgs, TwoQubitIsingReachesExactFreeEnergy) {
  const double beta = 1.0;
  const Problem p = ising_problem(2, beta);
  const auto res = multistart(p, 20, 3, OptimizerSettings{});
  ASSERT_GE(res.best_by_objective, 0);
  const oracle::M H = oracle::ising(2, 0.5, true);
  const oracle::M rho = oracle::gibbs(H, beta);
  const double exact = oracle::free_energy(H, rho, beta);
  EXPECT_NEAR(res.runs[static_cast<std::size_t>(res.best_by_objective)].final_free_energy, exact, 1e-6);
}

TEST(Spsa, GainsArePositiveAndDecreasing) {
  const SpsaSchedule g{0.5, 0.2, 10, 0.602, 0.101};
  for (long long k = 0; k < 1000; ++k) {
    EXPECT_GT(g.step(k + 1), 0.0);
    EXPECT_GT(g.perturbation(k + 1), 0.0);
    EXPECT_LT(g.step(k + 1), g.step(k));
    EXPECT_LT(g.perturbation(k + 1), g.perturbation(k));
  }
  EXPECT_DOUBLE_EQ(g.step(0), 0.5 / std::pow(11.0, 0.602));
  EXPECT_DOUBLE_EQ(g.perturbation(0), 0.2);
}

TEST(Spsa, NoiselessQuadratic) {
  auto f = [](std::span<const double> x, std::uint64_t) {
    double s = 0;
    for (double v : x) s += (v - 1) * (v - 1);
    return s;
  };
  auto median_error = [&](int iters) {
    std::vector<double> dist;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const RunRecord r = spsa_minimize(f, std::vector<double>(4, 0.0), spsa(iters), seed);
      double d = 0;
      for (double v : r.final_params) d = std::max(d, std::abs(v - 1));
      dist.push_back(d);
    }
    std::nth_element(dist.begin(), dist.begin() + 10, dist.end());
    return dist[10];
  };
  const double e200 = median_error(200), e1000 = median_error(1000);
  EXPECT_LT(e200, 0.05);
  EXPECT_LT(e1000, 1e-3);
  EXPECT_LT(e1000, e200);
}

TEST(Spsa, NoisyQuadraticReachesNoiseFloor) {
  const double sigma = 0.1;
  auto f = [sigma](std::span<const double> x, std::uint64_t s) {
    std::mt19937_64 rng(s);
    std::normal_distribution<double> noise(0.0, sigma);
    return sq_norm(x) + noise(rng);
  };
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RunRecord r = spsa_minimize(f, std::vector<double>(4, 1.0), spsa(400), seed);
    EXPECT_FALSE(r.failed);
    if (sq_norm(r.final_params) < 3 * sigma) ++ok;
  }
  EXPECT_GE(ok, 9);
}

TEST(Spsa, EvaluationAccounting) {
  long long calls = 0;
  auto f = [&](std::span<const double> x, std::uint64_t) {
    ++calls;
    return sq_norm(x);
  };
  for (int iters : {1, 17, 100}) {
    calls = 0;
    const RunRecord r = spsa_minimize(f, std::vector<double>(3, 0.5), spsa(iters), 4);
    EXPECT_EQ(r.evaluation_count, 2LL * iters + 50);
    EXPECT_EQ(calls, r.evaluation_count);
    EXPECT_EQ(r.calibration_evaluations, 50);
    EXPECT_EQ(r.iteration_count, iters);
  }
}

TEST(Spsa, SkipsNonFiniteEvaluations) {
  long long calls = 0;
  auto f = [&](std::span<const double> x, std::uint64_t) {
    ++calls;
    return calls > 50 && calls % 7 == 0 ? std::numeric_limits<double>::infinity() : sq_norm(x);
  };
  const RunRecord r = spsa_minimize(f, std::vector<double>(3, 0.5), spsa(60), 4);
  EXPECT_FALSE(r.failed);
  EXPECT_EQ(r.evaluation_count, 170);
  EXPECT_NE(r.diagnostic.find("skipped"), std::string::npos);

  auto nan = [](std::span<const double>, std::uint64_t) { return std::nan(""); };
  const RunRecord bad = spsa_minimize(nan, {0.0, 0.0}, spsa(10), 1);
  EXPECT_TRUE(bad.failed);
  EXPECT_EQ(bad.evaluation_count, 70);
}

TEST(Spsa, ObserverSeesEveryIteration) {
  std::vector<long long> ks;
  OptimizerSettings s = spsa(25);
  s.observer = [&](long long k, double) { ks.push_back(k); };
  spsa_minimize([](std::span<const double> x, std::uint64_t) { return sq_norm(x); }, {1.0, 2.0}, s, 8);
  ASSERT_EQ(ks.size(), 25u);
  for (std::size_t i = 0; i < ks.size(); ++i) EXPECT_EQ(ks[i], static_cast<long long>(i + 1));
}

TEST(Multistart, SingleRunMatchesDirectCall) {
  const Problem p = ising_problem(2, 1.0);
  const auto m = multistart(p, 1, 11, OptimizerSettings{});
  const std::uint64_t s = run_seed(11, 0);
  const RunRecord r = bfgs_minimize(p.exact, initial_point(p.dimension, s), OptimizerSettings{});
  ASSERT_EQ(m.runs.size(), 1u);
  EXPECT_EQ(m.runs[0].seed, s);
  EXPECT_EQ(m.runs[0].final_params, r.final_params);
  EXPECT_EQ(m.runs[0].final_free_energy, r.final_free_energy);

  const auto ms = multistart(p, 1, 11, spsa(30));
  const RunRecord rs = spsa_minimize(p.noisy, initial_point(p.dimension, s), spsa(30), s);
  EXPECT_EQ(ms.runs[0].final_params, rs.final_params);
}

TEST(Multistart, DeterministicAcrossWorkers) {
  const Problem p = ising_problem(2, 0.3);
  for (const OptimizerSettings& s : {OptimizerSettings{}, spsa(40)}) {
    const auto a = multistart(p, 6, 5, s, 1);
    const auto b = multistart(p, 6, 5, s, 1);
    const auto c = multistart(p, 6, 5, s, 4);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(a.runs[i].run_index, static_cast<int>(i));
      EXPECT_EQ(a.runs[i].final_params, b.runs[i].final_params);
      EXPECT_EQ(a.runs[i].final_params, c.runs[i].final_params);
      EXPECT_EQ(a.runs[i].final_free_energy, c.runs[i].final_free_energy);
      EXPECT_EQ(a.runs[i].evaluation_count, c.runs[i].evaluation_count);
    }
    EXPECT_EQ(a.best_by_objective, c.best_by_objective);
  }
}

TEST(Multistart, PrefixProperty) {
  const Problem p = ising_problem(2, 2.0);
  const auto small = multistart(p, 3, 21, OptimizerSettings{});
  const auto big = multistart(p, 8, 21, OptimizerSettings{}, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(small.runs[i].initial_params, big.runs[i].initial_params);
    EXPECT_EQ(small.runs[i].final_params, big.runs[i].final_params);
  }
}

TEST(Multistart, SubsetRunsOnlyListed) {
  const Problem p = ising_problem(2, 1.0);
  const std::vector<int> idx{1, 3};
  int done = 0;
  const auto sub = multistart_subset(p, idx, 5, 2, OptimizerSettings{}, 2,
                                     [&](const RunRecord&) { ++done; });
  const auto all = multistart(p, 5, 2, OptimizerSettings{});
  EXPECT_EQ(done, 2);
  ASSERT_EQ(sub.runs.size(), 5u);
  EXPECT_EQ(sub.runs[0].run_index, -1);
  EXPECT_EQ(sub.runs[1].final_params, all.runs[1].final_params);
  EXPECT_EQ(sub.runs[3].final_params, all.runs[3].final_params);
}

TEST(Multistart, BestByObjectiveIsMinimum) {
  std::vector<RunRecord> runs(5);
  const double v[] = {0.3, -1.0, -2.0, 0.1, -1.5};
  for (int i = 0; i < 5; ++i) {
    runs[i].run_index = i;
    runs[i].final_free_energy = v[i];
  }
  runs[2].failed = true;
  EXPECT_EQ(best_by_objective(runs), 4);
  runs[4].final_free_energy = std::nan("");
  EXPECT_EQ(best_by_objective(runs), 1);
  for (auto& r : runs) r.failed = true;
  EXPECT_EQ(best_by_objective(runs), -1);
}

TEST(Multistart, InitialPointsAreUniform) {
  const auto x = initial_point(10000, 77);
  double mean = 0;
  for (double v : x) {
    EXPECT_GE(v, -M_PI);
    EXPECT_LT(v, M_PI);
    mean += v;
  }
  EXPECT_NEAR(mean / 10000, 0.0, 0.06);
  EXPECT_NE(initial_point(4, run_seed(1, 0)), initial_point(4, run_seed(1, 1)));
}

TEST(RunRecordJson, RoundTrip) {
  RunRecord r;
  r.run_index = 4;
  r.seed = 0xfedcba9876543210ULL;
  r.initial_params = {0.1, -2.5, 1e-300};
  r.final_params = {3.141592653589793, 0.0};
  r.final_free_energy = -1.8200753;
  r.evaluation_count = 1234;
  r.iteration_count = 56;
  r.calibration_evaluations = 50;
  r.converged = true;
  r.diagnostic = "note";
  r.wall_time = 0.25;
  const RunRecord b = run_record_from_json(nlohmann::json::parse(to_json(r).dump()));
  EXPECT_EQ(b.run_index, r.run_index);
  EXPECT_EQ(b.seed, r.seed);
  EXPECT_EQ(b.initial_params, r.initial_params);
  EXPECT_EQ(b.final_params, r.final_params);
  EXPECT_EQ(b.final_free_energy, r.final_free_energy);
  EXPECT_EQ(b.evaluation_count, r.evaluation_count);
  EXPECT_EQ(b.iteration_count, r.iteration_count);
  EXPECT_EQ(b.calibration_evaluations, r.calibration_evaluations);
  EXPECT_EQ(b.converged, r.converged);
  EXPECT_EQ(b.failed, r.failed);
  EXPECT_EQ(b.diagnostic, r.diagnostic);
  EXPECT_EQ(b.wall_time, r.wall_time);
}

TEST(Multistart, TwoQubitFidelity) {
  ExperimentConfig c;
  c.n = 2;
  c.betas = {1.0};
  c.num_runs = 20;
  c.workers = 4;
  const SweepResult res = run_sweep(c);
  ASSERT_EQ(res.points.size(), 1u);
  EXPECT_GE(res.points[0].best_fidelity, 0.99);
}
