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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gibbsvqa/ansatz.hpp"
#include "gibbsvqa/hamiltonian.hpp"
#include "gibbsvqa/metrics.hpp"
#include "gibbsvqa/objective.hpp"
#include "gibbsvqa/optimizer.hpp"

namespace gibbsvqa {

/// Logarithmic grid 0.01 .. 100, half-decade steps.
std::vector<double> default_beta_grid();

/// One Gibbs-preparation experiment: model, ansatz, beta grid, evaluation
/// mode and optimizer. JSON keys mirror the CLI flags (see to_json).
struct ExperimentConfig {
  int n = 2;
  double h = 0.5;
  Boundary boundary = Boundary::Periodic;
  int layers_ancilla = 1;
  int layers_system = 0;  ///< 0 means n - 1 (at least 1)
  bool drop_nonadjacent_rp = false;
  std::vector<double> betas = default_beta_grid();
  EvaluationMode mode;
  int num_runs = 0;  ///< 0 means 20 in exact mode, 10 in shot mode
  std::uint64_t base_seed = 1;
  int max_iterations = 0;  ///< 0 means 1000 (BFGS) or 100 n (SPSA)
  double gradient_tolerance = 1e-8;
  int spsa_calibration_evals = 50;
  std::string out_dir;
  bool resume = false;
  int workers = 1;

  AnsatzConfig ansatz() const;
  OptimizerSettings optimizer() const;
  int effective_runs() const;
  Hamiltonian hamiltonian() const;

  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);

  /// Hex FNV-1a of the canonical JSON with the output/resume/worker keys
  /// removed.
  std::string hash() const;
};

/// One optimized run scored against the exact Gibbs state.
struct ScoredRun {
  std::size_t beta_index = 0;
  double beta = 0.0;
  RunRecord record;
  double exact_objective = 0.0;  ///< evaluate_exact at the final parameters
  double fidelity = 0.0;
  double trace_distance = 0.0;
  double relative_entropy = 0.0;
};

struct SweepPoint {
  double beta = 0.0;
  double exact_free_energy = 0.0;
  std::vector<ScoredRun> runs;  ///< ordered by run index
  int best_by_objective = -1;
  int best_by_fidelity = -1;
  double best_fidelity = 0.0;
  double best_trace_distance = 0.0;
  double best_relative_entropy = 0.0;
  double best_free_energy = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::string config_hash;
  std::vector<SweepPoint> points;
};

/// Scores prepared system states against the Gibbs state of `spectrum`.
ScoredRun score_run(const ExperimentConfig& config, const Spectrum& spectrum, double beta,
                    const RunRecord& record);

/// Multistart at every beta, scoring each run. When config.out_dir is set,
/// writes config.json, runs.csv (appended as runs finish, rewritten sorted
/// at the end), summary.csv and params/<beta>/<run>.json; with resume,
/// (beta, run) pairs already in runs.csv are not recomputed.
SweepResult run_sweep(const ExperimentConfig& config);

/// Coefficient-of-variation grid and power-law fits.
struct AppendixAConfig {
  double h = 0.5;
  std::vector<Boundary> boundaries{Boundary::Periodic};
  std::vector<double> betas{0.0, 0.1, 1.0, 10.0, 100.0};
  std::vector<int> n_values{6, 8, 10, 12};
  int num_states = 16;
  std::uint64_t shots = 1024;
  std::string out_dir;

  static AppendixAConfig from_json(const nlohmann::json& j);
};

struct CvRow {
  int n = 0;
  double h = 0.0;
  Boundary boundary = Boundary::Periodic;
  double beta = 0.0;
  int i = 0;
  double c_v = 0.0;
  std::uint64_t shots = 0;
};

struct CvFit {
  Boundary boundary = Boundary::Periodic;
  double beta = 0.0;
  FitResult fit;
};

struct AppendixAResult {
  std::vector<CvRow> rows;
  std::vector<CvFit> fits;
};

/// Writes cv.csv (n, h, boundary, beta, i, c_v, shots) and fits.json.
AppendixAResult run_appendix_a(const AppendixAConfig& config);

struct AppendixBConfig {
  std::vector<int> n_values{3};
  std::vector<double> h_values{0.5};
  std::vector<double> betas{1.0};
  Boundary boundary = Boundary::Periodic;
  int restarts = 200;
  int layers_ancilla = 1;
  std::uint64_t seed = 1;
  std::string out_dir;

  static AppendixBConfig from_json(const nlohmann::json& j);
};

struct AppendixBRow {
  int n = 0;
  double h = 0.0;
  Boundary boundary = Boundary::Periodic;
  double beta = 0.0;
  double constraint_gap = 0.0;
  double best_product_fidelity = 0.0;
  double entangled_fidelity = 0.0;
  int layers_ancilla = 1;
};

/// Writes appendix_b.csv.
std::vector<AppendixBRow> run_appendix_b(const AppendixBConfig& config);

struct ResourceRow {
  int n = 0;
  int layers_ancilla = 0;
  int layers_system = 0;
  ResourceCount counts;
  ResourceCount quoted;       ///< closed forms at l_A = 1, l_S = n - 1
  ResourceCount at_defaults;  ///< count_resources at l_A = 1, l_S = n - 1
  bool sqrt_x_discrepancy = false;
};

/// layers_system = 0 means n - 1.
std::vector<ResourceRow> report_resources(const std::vector<int>& n_values, int layers_ancilla,
                                          int layers_system);
std::string resources_csv(const std::vector<ResourceRow>& rows);

/// Oracle dump for one (n, h, boundary, beta): energies, probabilities,
/// ln Z, free energy and (n <= 8) the Gibbs matrix.
nlohmann::json exact_gibbs_report(int n, double h, Boundary boundary, double beta);

/// TFD statevector from a saved parameter file plus reduced-state checks.
nlohmann::json tfd_report(const std::filesystem::path& params_file);

/// CSV cell formatting used by every writer (round-trip exact doubles).
std::string format_double(double v);

}  // namespace gibbsvqa
