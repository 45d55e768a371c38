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


#include "gibbsvqa/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/metrics.hpp"
#include "gibbsvqa/random.hpp"

namespace gibbsvqa {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRunsHeader =
    "beta_index,beta,run,seed,final_free_energy,exact_objective,fidelity,trace_distance,"
    "relative_entropy,evaluations,calibration_evaluations,iterations,converged,failed,wall_time";

constexpr const char* kSummaryHeader =
    "n,h,boundary,beta,mode,runs,best_fidelity,best_trace_distance,best_relative_entropy,"
    "best_free_energy,exact_free_energy,seed,config_hash";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string beta_label(double beta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", beta);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed for " + path.string());
}

std::string runs_row(const ScoredRun& s) {
  const RunRecord& r = s.record;
  std::ostringstream os;
  os << s.beta_index << ',' << format_double(s.beta) << ',' << r.run_index << ',' << r.seed << ','
     << format_double(r.final_free_energy) << ',' << format_double(s.exact_objective) << ','
     << format_double(s.fidelity) << ',' << format_double(s.trace_distance) << ','
     << format_double(s.relative_entropy) << ',' << r.evaluation_count << ','
     << r.calibration_evaluations << ',' << r.iteration_count << ',' << (r.converged ? 1 : 0)
     << ',' << (r.failed ? 1 : 0) << ',' << format_double(r.wall_time);
  return os.str();
}

nlohmann::json params_json(const ExperimentConfig& config, const ScoredRun& s) {
  const AnsatzConfig ac = config.ansatz();
  nlohmann::json j;
  j["config"] = config.to_json();
  j["beta"] = s.beta;
  j["run"] = s.record.run_index;
  if (s.record.final_params.size() == ac.num_params()) {
    const ParameterVector p = ParameterVector::from_flat(ac, s.record.final_params);
    j["theta"] = p.theta;
    j["phi"] = p.phi;
  }
  j["record"] = to_json(s.record);
  j["exact_objective"] = s.exact_objective;
  j["fidelity"] = s.fidelity;
  j["trace_distance"] = s.trace_distance;
  j["relative_entropy"] = std::isfinite(s.relative_entropy) ? nlohmann::json(s.relative_entropy)
                                                            : nlohmann::json("inf");
  return j;
}

ScoredRun scored_from_json(const nlohmann::json& j, std::size_t beta_index) {
  ScoredRun s;
  s.beta_index = beta_index;
  s.beta = j.at("beta").get<double>();
  s.record = run_record_from_json(j.at("record"));
  s.exact_objective = j.at("exact_objective").get<double>();
  s.fidelity = j.at("fidelity").get<double>();
  s.trace_distance = j.at("trace_distance").get<double>();
  const auto& re = j.at("relative_entropy");
  s.relative_entropy = re.is_string() ? std::numeric_limits<double>::infinity() : re.get<double>();
  return s;
}

void summarize(SweepPoint& pt) {
  pt.best_by_objective = -1;
  pt.best_by_fidelity = -1;
  pt.best_fidelity = std::numeric_limits<double>::quiet_NaN();
  pt.best_trace_distance = std::numeric_limits<double>::quiet_NaN();
  pt.best_relative_entropy = std::numeric_limits<double>::quiet_NaN();
  pt.best_free_energy = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < pt.runs.size(); ++k) {
    const ScoredRun& s = pt.runs[k];
    if (s.record.failed) continue;
    const int ki = static_cast<int>(k);
    if (pt.best_by_fidelity < 0 || s.fidelity > pt.best_fidelity) {
      pt.best_by_fidelity = ki;
      pt.best_fidelity = s.fidelity;
    }
    if (pt.best_by_objective < 0 || s.exact_objective < pt.best_free_energy) {
      pt.best_by_objective = ki;
      pt.best_free_energy = s.exact_objective;
    }
    if (std::isnan(pt.best_trace_distance) || s.trace_distance < pt.best_trace_distance) {
      pt.best_trace_distance = s.trace_distance;
    }
    if (std::isnan(pt.best_relative_entropy) || s.relative_entropy < pt.best_relative_entropy) {
      pt.best_relative_entropy = s.relative_entropy;
    }
  }
}

std::string summary_csv(const SweepResult& res) {
  const ExperimentConfig& c = res.config;
  std::ostringstream os;
  os << kSummaryHeader << '\n';
  for (const auto& pt : res.points) {
    os << c.n << ',' << format_double(c.h) << ',' << to_string(c.boundary) << ','
       << format_double(pt.beta) << ',' << to_string(c.mode.kind) << ',' << pt.runs.size() << ','
       << format_double(pt.best_fidelity) << ',' << format_double(pt.best_trace_distance) << ','
       << format_double(pt.best_relative_entropy) << ',' << format_double(pt.best_free_energy)
       << ',' << format_double(pt.exact_free_energy) << ',' << c.base_seed << ','
       << res.config_hash << '\n';
  }
  return os.str();
}

template <typename T>
std::vector<T> json_list(const nlohmann::json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                         const char* what) {
  if (!j.is_object()) throw ArgumentError(std::string(what) + " config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ArgumentError(std::string("unknown ") + what + " config key '" + key + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> default_beta_grid() {
  return {0.01, 0.0316, 0.1, 0.316, 1.0, 3.16, 10.0, 31.6, 100.0};
}

AnsatzConfig ExperimentConfig::ansatz() const {
  AnsatzConfig a;
  a.n = n;
  a.layers_ancilla = layers_ancilla;
  a.layers_system = layers_system > 0 ? layers_system : std::max(n - 1, 1);
  a.connectivity = Boundary::Periodic;
  a.drop_nonadjacent_rp = drop_nonadjacent_rp;
  return a;
}

OptimizerSettings ExperimentConfig::optimizer() const {
  OptimizerSettings s;
  if (mode.kind == EvaluationMode::Kind::Shots) {
    s = OptimizerSettings::spsa_for(n);
    s.spsa_calibration_evals = spsa_calibration_evals;
  } else {
    s.algorithm = Algorithm::Bfgs;
    s.max_iterations = 1000;
    s.gradient_tolerance = gradient_tolerance;
  }
  if (max_iterations > 0) s.max_iterations = max_iterations;
  return s;
}

int ExperimentConfig::effective_runs() const {
  if (num_runs > 0) return num_runs;
  return mode.kind == EvaluationMode::Kind::Shots ? 10 : 20;
}

Hamiltonian ExperimentConfig::hamiltonian() const { return build_ising(n, h, boundary); }

void ExperimentConfig::validate() const {
  if (n < 2) throw ArgumentError("n must be >= 2");
  ansatz().validate();
  if (betas.empty()) throw ArgumentError("beta grid is empty");
  for (double b : betas) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ArgumentError("every beta must be finite and > 0");
  }
  if (mode.kind == EvaluationMode::Kind::Shots && mode.shots_per_circuit == 0) {
    throw ArgumentError("shots must be positive");
  }
  if (num_runs < 0) throw ArgumentError("runs must be >= 0");
  if (workers < 1) throw ArgumentError("workers must be >= 1");
}

nlohmann::json ExperimentConfig::to_json() const {
  return nlohmann::json{{"n", n},
                        {"h", h},
                        {"boundary", to_string(boundary)},
                        {"layers_ancilla", layers_ancilla},
                        {"layers_system", ansatz().layers_system},
                        {"drop_nonadjacent_rp", drop_nonadjacent_rp},
                        {"beta", betas},
                        {"mode", to_string(mode.kind)},
                        {"shots", mode.shots_per_circuit},
                        {"miller_madow", mode.miller_madow},
                        {"runs", effective_runs()},
                        {"seed", base_seed},
                        {"max_iterations", optimizer().max_iterations},
                        {"gradient_tolerance", gradient_tolerance},
                        {"calibration_evals", spsa_calibration_evals},
                        {"out", out_dir},
                        {"resume", resume},
                        {"workers", workers}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  reject_unknown_keys(j,
                      {"n", "h", "boundary", "layers_ancilla", "layers_system",
                       "drop_nonadjacent_rp", "beta", "mode", "shots", "miller_madow", "runs",
                       "seed", "max_iterations", "gradient_tolerance", "calibration_evals", "out",
                       "resume", "workers"},
                      "sweep");
  ExperimentConfig c;
  try {
    c.n = j.value("n", c.n);
    c.h = j.value("h", c.h);
    if (j.contains("boundary")) c.boundary = boundary_from_string(j.at("boundary").get<std::string>());
    c.layers_ancilla = j.value("layers_ancilla", c.layers_ancilla);
    c.layers_system = j.value("layers_system", c.layers_system);
    c.drop_nonadjacent_rp = j.value("drop_nonadjacent_rp", c.drop_nonadjacent_rp);
    c.betas = json_list<double>(j, "beta", c.betas);
    if (j.contains("mode")) {
      const std::string m = j.at("mode").get<std::string>();
      if (m == "exact") {
        c.mode.kind = EvaluationMode::Kind::Exact;
      } else if (m == "shots") {
        c.mode.kind = EvaluationMode::Kind::Shots;
      } else {
        throw ArgumentError("mode must be 'exact' or 'shots', got '" + m + "'");
      }
    }
    c.mode.shots_per_circuit = j.value("shots", c.mode.shots_per_circuit);
    c.mode.miller_madow = j.value("miller_madow", c.mode.miller_madow);
    c.num_runs = j.value("runs", c.num_runs);
    c.base_seed = j.value("seed", c.base_seed);
    c.max_iterations = j.value("max_iterations", c.max_iterations);
    c.gradient_tolerance = j.value("gradient_tolerance", c.gradient_tolerance);
    c.spsa_calibration_evals = j.value("calibration_evals", c.spsa_calibration_evals);
    c.out_dir = j.value("out", c.out_dir);
    c.resume = j.value("resume", c.resume);
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad sweep config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string ExperimentConfig::hash() const {
  nlohmann::json j = to_json();
  j.erase("out");
  j.erase("resume");
  j.erase("workers");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

ScoredRun score_run(const ExperimentConfig& config, const Spectrum& spectrum, double beta,
                    const RunRecord& record) {
  ScoredRun s;
  s.beta = beta;
  s.record = record;
  const AnsatzConfig ac = config.ansatz();
  if (record.final_params.size() != ac.num_params()) {
    s.record.failed = true;
    s.exact_objective = std::numeric_limits<double>::quiet_NaN();
    s.fidelity = s.trace_distance = s.relative_entropy = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const ParameterVector p = ParameterVector::from_flat(ac, record.final_params);
  s.exact_objective = evaluate_exact(ac, p, config.hamiltonian(), beta).free_energy;
  const StateVector state = prepare_variational_state(ac, p);
  const auto sys = qubit_range(ac.n, ac.n);
  const DensityMatrix rho = partial_trace(state, sys);
  const DensityMatrix gibbs = gibbs_state(spectrum, beta);
  s.fidelity = fidelity(rho, gibbs);
  s.trace_distance = trace_distance(rho, gibbs);
  s.relative_entropy = relative_entropy(rho, gibbs);
  return s;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult res;
  res.config = config;
  res.config_hash = config.hash();

  const bool persist = !config.out_dir.empty();
  const fs::path out = config.out_dir;
  // (beta index, run) -> previously completed run
  std::map<std::pair<std::size_t, int>, ScoredRun> done;
  if (persist) {
    ensure_writable_dir(out);
    const fs::path cfg_path = out / "config.json";
    if (config.resume && fs::exists(cfg_path)) {
      std::ifstream f(cfg_path);
      const ExperimentConfig prev = ExperimentConfig::from_json(nlohmann::json::parse(f));
      if (prev.hash() != res.config_hash) {
        throw ArgumentError("resume requested but " + cfg_path.string() +
                            " describes a different experiment");
      }
    }
    write_text(cfg_path, config.to_json().dump(2) + "\n");

    const fs::path runs_path = out / "runs.csv";
    if (config.resume && fs::exists(runs_path)) {
      std::ifstream f(runs_path);
      std::string line;
      std::getline(f, line);
      while (std::getline(f, line)) {
        const auto cells = split_csv(line);
        if (cells.size() < 3) continue;  // truncated final line
        const std::size_t bi = std::stoul(cells[0]);
        const int run = std::stoi(cells[2]);
        if (bi >= config.betas.size()) continue;
        const fs::path pf = out / "params" / beta_label(config.betas[bi]) / (std::to_string(run) + ".json");
        if (!fs::exists(pf)) continue;
        std::ifstream pfs(pf);
        done[{bi, run}] = scored_from_json(nlohmann::json::parse(pfs), bi);
      }
    }
    // Journal of completed runs; rewritten in canonical order at the end.
    std::ofstream f(runs_path, std::ios::trunc);
    if (!f) throw IoError("cannot write " + runs_path.string());
    f << kRunsHeader << '\n';
    for (const auto& [key, s] : done) f << runs_row(s) << '\n';
  }

  const AnsatzConfig ac = config.ansatz();
  const Hamiltonian ham = config.hamiltonian();
  const Spectrum spectrum = diagonalize(ham);
  const OptimizerSettings settings = config.optimizer();
  const int num_runs = config.effective_runs();
  std::mutex io_mutex;

  for (std::size_t bi = 0; bi < config.betas.size(); ++bi) {
    const double beta = config.betas[bi];
    SweepPoint pt;
    pt.beta = beta;
    pt.exact_free_energy = exact_free_energy(spectrum, beta);

    Problem problem;
    problem.dimension = ac.num_params();
    problem.exact = [&](std::span<const double> x, std::span<double> g) {
      const ParameterVector p = ParameterVector::from_flat(ac, x);
      const std::vector<double> grad = gradient_exact(ac, p, ham, beta);
      std::copy(grad.begin(), grad.end(), g.begin());
      return evaluate_exact(ac, p, ham, beta).free_energy;
    };
    problem.noisy = [&](std::span<const double> x, std::uint64_t stream) {
      const ParameterVector p = ParameterVector::from_flat(ac, x);
      return evaluate_shots(ac, p, ham, beta, config.mode, stream).free_energy;
    };

    std::vector<int> todo;
    for (int r = 0; r < num_runs; ++r) {
      if (!done.count({bi, r})) todo.push_back(r);
    }
    // Beta-specific base seed so every grid point has its own run streams.
    const std::uint64_t beta_seed = stream_seed(config.base_seed, {bi});
    std::vector<ScoredRun> fresh(static_cast<std::size_t>(num_runs));
    auto on_done = [&](const RunRecord& rec) {
      ScoredRun s = score_run(config, spectrum, beta, rec);
      s.beta_index = bi;
      if (persist) {
        std::lock_guard<std::mutex> lock(io_mutex);
        const fs::path dir = out / "params" / beta_label(beta);
        fs::create_directories(dir);
        write_text(dir / (std::to_string(rec.run_index) + ".json"), params_json(config, s).dump(2) + "\n");
        std::ofstream f(out / "runs.csv", std::ios::app);
        f << runs_row(s) << '\n';
      }
      fresh[static_cast<std::size_t>(rec.run_index)] = std::move(s);
    };
    if (!todo.empty()) {
      multistart_subset(problem, todo, num_runs, beta_seed, settings, config.workers, on_done);
    }

    for (int r = 0; r < num_runs; ++r) {
      auto it = done.find({bi, r});
      pt.runs.push_back(it != done.end() ? it->second : fresh[static_cast<std::size_t>(r)]);
    }
    summarize(pt);
    res.points.push_back(std::move(pt));
  }

  if (persist) {
    std::ostringstream runs;
    runs << kRunsHeader << '\n';
    for (const auto& pt : res.points) {
      for (const auto& s : pt.runs) runs << runs_row(s) << '\n';
    }
    write_text(out / "runs.csv", runs.str());
    write_text(out / "summary.csv", summary_csv(res));
  }
  return res;
}

AppendixAConfig AppendixAConfig::from_json(const nlohmann::json& j) {
  reject_unknown_keys(j, {"h", "boundary", "beta", "n_values", "num_states", "shots", "out"},
                      "appendix-a");
  AppendixAConfig c;
  try {
    c.h = j.value("h", c.h);
    if (j.contains("boundary")) {
      c.boundaries.clear();
      for (const auto& s : json_list<std::string>(j, "boundary", {})) {
        c.boundaries.push_back(boundary_from_string(s));
      }
    }
    c.betas = json_list<double>(j, "beta", c.betas);
    c.n_values = json_list<int>(j, "n_values", c.n_values);
    c.num_states = j.value("num_states", c.num_states);
    c.shots = j.value("shots", c.shots);
    c.out_dir = j.value("out", c.out_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad appendix-a config: ") + e.what());
  }
  return c;
}

AppendixAResult run_appendix_a(const AppendixAConfig& config) {
  if (config.n_values.size() < 3) throw ArgumentError("appendix-a needs at least 3 sizes");
  if (config.num_states < 1) throw ArgumentError("num_states must be >= 1");
  if (config.shots == 0) throw ArgumentError("shots must be >= 1");
  for (double b : config.betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw ArgumentError("beta must be finite and >= 0");
  }
  const int min_n = *std::min_element(config.n_values.begin(), config.n_values.end());
  if (static_cast<std::size_t>(config.num_states) > (std::size_t{1} << min_n)) {
    throw ArgumentError("num_states exceeds 2^n for the smallest n");
  }
  if (!config.out_dir.empty()) ensure_writable_dir(config.out_dir);

  AppendixAResult res;
  const double root_shots = std::sqrt(static_cast<double>(config.shots));
  for (Boundary b : config.boundaries) {
    std::map<int, Spectrum> spectra;
    for (int n : config.n_values) {
      spectra.emplace(n, diagonalize(build_ising(n, config.h, b), {.eigenvectors = false}));
    }
    for (double beta : config.betas) {
      for (int i = 0; i < config.num_states; ++i) {
        std::vector<double> y;
        for (int n : config.n_values) {
          const double cv = cv_boltzmann(spectra.at(n), beta, config.shots, static_cast<std::size_t>(i));
          res.rows.push_back({n, config.h, b, beta, i, cv, config.shots});
          y.push_back(cv * root_shots);
        }
        CvFit fit;
        fit.boundary = b;
        fit.beta = beta;
        try {
          fit.fit = fit_power_law(config.n_values, y);
        } catch (const NumericError&) {
          // c_v underflowed to zero for some size; no log-log fit exists.
          fit.fit.exponent = std::numeric_limits<double>::quiet_NaN();
          fit.fit.prefactor = std::numeric_limits<double>::quiet_NaN();
          fit.fit.r_squared = std::numeric_limits<double>::quiet_NaN();
          fit.fit.n_values = config.n_values;
        }
        fit.fit.state_index = static_cast<std::size_t>(i);
        res.fits.push_back(fit);
      }
    }
  }

  if (!config.out_dir.empty()) {
    std::ostringstream csv;
    csv << "n,h,boundary,beta,i,c_v,shots\n";
    for (const auto& r : res.rows) {
      csv << r.n << ',' << format_double(r.h) << ',' << to_string(r.boundary) << ','
          << format_double(r.beta) << ',' << r.i << ',' << format_double(r.c_v) << ',' << r.shots
          << '\n';
    }
    write_text(fs::path(config.out_dir) / "cv.csv", csv.str());
    nlohmann::json fits = nlohmann::json::array();
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    for (const auto& f : res.fits) {
      fits.push_back({{"boundary", to_string(f.boundary)},
                      {"h", config.h},
                      {"beta", f.beta},
                      {"state_index", f.fit.state_index},
                      {"exponent", num(f.fit.exponent)},
                      {"prefactor", num(f.fit.prefactor)},
                      {"r_squared", num(f.fit.r_squared)},
                      {"n_range", f.fit.n_values},
                      {"shots", config.shots}});
    }
    write_text(fs::path(config.out_dir) / "fits.json", fits.dump(2) + "\n");
  }
  return res;
}

AppendixBConfig AppendixBConfig::from_json(const nlohmann::json& j) {
  reject_unknown_keys(j, {"n_values", "h_values", "h", "n", "beta", "boundary", "restarts",
                          "layers_ancilla", "seed", "out"},
                      "appendix-b");
  AppendixBConfig c;
  try {
    c.n_values = json_list<int>(j, "n_values", json_list<int>(j, "n", c.n_values));
    c.h_values = json_list<double>(j, "h_values", json_list<double>(j, "h", c.h_values));
    c.betas = json_list<double>(j, "beta", c.betas);
    if (j.contains("boundary")) c.boundary = boundary_from_string(j.at("boundary").get<std::string>());
    c.restarts = j.value("restarts", c.restarts);
    c.layers_ancilla = j.value("layers_ancilla", c.layers_ancilla);
    c.seed = j.value("seed", c.seed);
    c.out_dir = j.value("out", c.out_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad appendix-b config: ") + e.what());
  }
  return c;
}

std::vector<AppendixBRow> run_appendix_b(const AppendixBConfig& config) {
  if (!config.out_dir.empty()) ensure_writable_dir(config.out_dir);
  std::vector<AppendixBRow> rows;
  for (int n : config.n_values) {
    if (n < 2 || n > 6) throw ArgumentError("appendix-b supports 2 <= n <= 6");
    for (double h : config.h_values) {
      const Spectrum sp = diagonalize(build_ising(n, h, config.boundary), {.eigenvectors = false});
      const double gap = product_ansatz_constraint_gap(sp);
      for (double beta : config.betas) {
        AppendixBRow r;
        r.n = n;
        r.h = h;
        r.boundary = config.boundary;
        r.beta = beta;
        r.constraint_gap = gap;
        r.layers_ancilla = config.layers_ancilla;
        r.best_product_fidelity = best_product_distribution_fidelity(sp, beta, config.restarts, config.seed);
        const std::vector<double> p = boltzmann_probs(sp, beta);
        r.entangled_fidelity = best_ancilla_distribution_fidelity(p, n, config.layers_ancilla,
                                                                  config.restarts, config.seed);
        rows.push_back(r);
      }
    }
  }
  if (!config.out_dir.empty()) {
    std::ostringstream csv;
    csv << "n,h,boundary,beta,constraint_gap,best_product_fidelity,entangled_fidelity,layers_ancilla\n";
    for (const auto& r : rows) {
      csv << r.n << ',' << format_double(r.h) << ',' << to_string(r.boundary) << ','
          << format_double(r.beta) << ',' << format_double(r.constraint_gap) << ','
          << format_double(r.best_product_fidelity) << ',' << format_double(r.entangled_fidelity)
          << ',' << r.layers_ancilla << '\n';
    }
    write_text(fs::path(config.out_dir) / "appendix_b.csv", csv.str());
  }
  return rows;
}

std::vector<ResourceRow> report_resources(const std::vector<int>& n_values, int layers_ancilla,
                                          int layers_system) {
  std::vector<ResourceRow> rows;
  for (int n : n_values) {
    AnsatzConfig c;
    c.n = n;
    c.layers_ancilla = layers_ancilla;
    c.layers_system = layers_system > 0 ? layers_system : n - 1;
    ResourceRow r;
    r.n = n;
    r.layers_ancilla = c.layers_ancilla;
    r.layers_system = c.layers_system;
    r.counts = count_resources(c);
    r.at_defaults = count_resources(AnsatzConfig::defaults_for(n));
    r.quoted = quoted_resources_at_default_layers(n);
    r.sqrt_x_discrepancy = r.at_defaults.num_sqrt_x != r.quoted.num_sqrt_x;
    rows.push_back(r);
  }
  return rows;
}

std::string resources_csv(const std::vector<ResourceRow>& rows) {
  std::ostringstream os;
  os << "n,layers_ancilla,layers_system,num_parameters,num_cnot,num_sqrt_x,circuit_depth,"
        "quoted_parameters,quoted_cnot,quoted_sqrt_x,quoted_depth,sqrt_x_discrepancy\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.layers_ancilla << ',' << r.layers_system << ',' << r.counts.num_parameters
       << ',' << r.counts.num_cnot << ',' << r.counts.num_sqrt_x << ',' << r.counts.circuit_depth
       << ',' << r.quoted.num_parameters << ',' << r.quoted.num_cnot << ','
       << r.quoted.num_sqrt_x << ',' << r.quoted.circuit_depth << ','
       << (r.sqrt_x_discrepancy ? 1 : 0) << '\n';
  }
  return os.str();
}

nlohmann::json exact_gibbs_report(int n, double h, Boundary boundary, double beta) {
  const bool with_matrix = n <= 8;
  const Spectrum sp = diagonalize(build_ising(n, h, boundary), {.eigenvectors = with_matrix});
  std::vector<double> e(sp.energy_span().begin(), sp.energy_span().end());
  nlohmann::json j{{"n", n},
                   {"h", h},
                   {"boundary", to_string(boundary)},
                   {"beta", beta},
                   {"energies", e},
                   {"probabilities", boltzmann_probs(sp, beta)},
                   {"log_partition_function", log_partition_function(sp.energy_span(), beta)}};
  if (beta > 0.0) j["free_energy"] = exact_free_energy(sp, beta);
  if (with_matrix) {
    const DensityMatrix rho = gibbs_state(sp, beta);
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index r = 0; r < rho.dim(); ++r) {
      std::vector<double> rr, ii;
      for (Eigen::Index c = 0; c < rho.dim(); ++c) {
        rr.push_back(rho.matrix()(r, c).real());
        ii.push_back(rho.matrix()(r, c).imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    j["gibbs_state"] = {{"real", re}, {"imag", im}};
  }
  return j;
}

nlohmann::json tfd_report(const fs::path& params_file) {
  std::ifstream f(params_file);
  if (!f) throw IoError("cannot read " + params_file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad parameter file: ") + e.what());
  }
  const ExperimentConfig config = ExperimentConfig::from_json(j.at("config"));
  const double beta = j.at("beta").get<double>();
  const AnsatzConfig ac = config.ansatz();
  ParameterVector p;
  p.theta = j.at("theta").get<std::vector<double>>();
  p.phi = j.at("phi").get<std::vector<double>>();
  p.check(ac);

  const StateVector tfd = prepare_tfd_state(ac, p);
  const DensityMatrix on_ancilla = partial_trace(tfd, qubit_range(0, ac.n));
  const DensityMatrix on_system = partial_trace(tfd, qubit_range(ac.n, ac.n));
  const Spectrum sp = diagonalize(config.hamiltonian());
  const DensityMatrix gibbs = gibbs_state(sp, beta);

  std::vector<double> re, im;
  for (const auto& a : tfd.amplitudes()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return nlohmann::json{{"n", ac.n},
                        {"beta", beta},
                        {"num_qubits", tfd.num_qubits()},
                        {"amplitudes", {{"real", re}, {"imag", im}}},
                        {"reduced_trace_distance", trace_distance(on_ancilla, on_system)},
                        {"fidelity_ancilla", fidelity(on_ancilla, gibbs)},
                        {"fidelity_system", fidelity(on_system, gibbs)}};
}

}  // namespace gibbsvqa
