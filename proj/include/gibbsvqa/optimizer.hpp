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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace gibbsvqa {

enum class Algorithm { Bfgs, Spsa };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct OptimizerSettings {
  Algorithm algorithm = Algorithm::Bfgs;
  int max_iterations = 1000;
  double gradient_tolerance = 1e-8;

  // SPSA. Gains a_k = a/(k+1+A)^alpha, c_k = c/(k+1)^gamma. Non-positive
  // a or c means "calibrate"; negative A means 10% of max_iterations.
  int spsa_calibration_evals = 50;
  double spsa_a = 0.0;
  double spsa_c = 0.0;
  double spsa_stability = -1.0;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
  /// Intended magnitude of the first update (radians) when calibrating a.
  double spsa_target_step = 0.1;
  /// Lower clamp for a calibrated c.
  double spsa_min_c = 0.1;

  /// Called with (iteration, value) for the starting point and every
  /// accepted BFGS iterate, and after every SPSA iteration (mean of its two
  /// evaluations).
  std::function<void(long long, double)> observer;

  /// SPSA with max_iterations = 100 n.
  static OptimizerSettings spsa_for(int n);
};

/// SPSA gain sequences a_k = a/(k+1+A)^alpha and c_k = c/(k+1)^gamma.
struct SpsaSchedule {
  double a = 0.0;
  double c = 0.0;
  double stability = 0.0;
  double alpha = 0.602;
  double gamma = 0.101;

  double step(long long k) const;
  double perturbation(long long k) const;
};

struct RunRecord {
  int run_index = 0;
  std::uint64_t seed = 0;
  std::vector<double> initial_params;
  std::vector<double> final_params;
  double final_free_energy = 0.0;
  long long evaluation_count = 0;
  long long iteration_count = 0;
  long long calibration_evaluations = 0;
  bool converged = false;
  bool failed = false;
  std::string diagnostic;
  double wall_time = 0.0;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

/// Returns f(x) and writes df/dx into `grad`.
using GradientObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Stochastic objective. `stream` identifies the evaluation so the caller can
/// key its sampling RNG independently of call order.
using NoisyObjective = std::function<double(std::span<const double> x, std::uint64_t stream)>;

/// BFGS with inverse-Hessian updates and a strong-Wolfe line search. A
/// failed line search retries once along the steepest-descent direction
/// and ends the run if that also fails.
RunRecord bfgs_minimize(const GradientObjective& objective, std::vector<double> x0,
                        const OptimizerSettings& settings);

/// First-order SPSA. Exactly two objective calls per iteration plus
/// `spsa_calibration_evals` calls spent on calibration; returns the final
/// iterate and reports its value as the mean of the last iteration's two
/// evaluations.
RunRecord spsa_minimize(const NoisyObjective& objective, std::vector<double> x0,
                        const OptimizerSettings& settings, std::uint64_t seed);

struct Problem {
  std::size_t dimension = 0;
  GradientObjective exact;  ///< used by BFGS
  NoisyObjective noisy;     ///< used by SPSA
};

struct MultistartResult {
  std::vector<RunRecord> runs;
  int best_by_objective = -1;
};

/// Seed of run `run_index` under `base_seed`.
std::uint64_t run_seed(std::uint64_t base_seed, int run_index);

/// Initial point of run `run_index`: uniform in [-pi, pi) per coordinate.
std::vector<double> initial_point(std::size_t dimension, std::uint64_t seed);

/// Independent local runs from random starts. Results depend only on
/// (problem, base_seed, settings), not on `workers` or scheduling.
MultistartResult multistart(const Problem& problem, int num_runs, std::uint64_t base_seed,
                            const OptimizerSettings& settings, int workers = 1);

/// Runs the listed run indices only (others are left default with
/// run_index = -1). Used by resumable sweeps.
MultistartResult multistart_subset(const Problem& problem, std::span<const int> run_indices,
                                   int num_runs, std::uint64_t base_seed,
                                   const OptimizerSettings& settings, int workers,
                                   const std::function<void(const RunRecord&)>& on_done = {});

/// Index of the lowest final free energy among non-failed runs (-1 if none).
int best_by_objective(std::span<const RunRecord> runs);

}  // namespace gibbsvqa
