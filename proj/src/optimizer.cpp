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


#include "gibbsvqa/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/random.hpp"

namespace gibbsvqa {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

struct NonFinite {};

// Counts calls and turns non-finite results into an exception the driver
// reports as a failed run.
class CountingObjective {
 public:
  explicit CountingObjective(const GradientObjective& f) : f_(f) {}

  double operator()(const Vec& x, Vec& g) {
    ++calls_;
    const double v = f_(x, g);
    if (!std::isfinite(v) || !all_finite(g)) throw NonFinite{};
    return v;
  }

  long long calls() const { return calls_; }

 private:
  const GradientObjective& f_;
  long long calls_ = 0;
};

struct LineSearchResult {
  bool ok = false;
  double alpha = 0.0;
  double f = 0.0;
  Vec x;
  Vec g;
};

// Cubic minimizer of the interpolant through (a, fa, da), (b, fb, db),
// falling back to bisection when it is undefined or outside the bracket.
double interpolate(double a, double fa, double da, double b, double fb, double db) {
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double t = b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
    const double margin = 0.1 * (hi - lo);
    if (std::isfinite(t) && t > lo + margin && t < hi - margin) return t;
  }
  return 0.5 * (a + b);
}

// Strong-Wolfe line search (bracketing + zoom).
LineSearchResult line_search(CountingObjective& f, const Vec& x, double f0, const Vec& g0,
                             const Vec& p) {
  constexpr double kC1 = 1e-4;
  constexpr double kC2 = 0.9;
  constexpr int kMaxEvals = 40;
  constexpr double kMaxAlpha = 1e4;

  const double d0 = dot(g0, p);
  LineSearchResult res;
  if (!(d0 < 0.0)) return res;

  auto eval = [&](double alpha, LineSearchResult& out) {
    out.x.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.x[i] = x[i] + alpha * p[i];
    out.g.assign(x.size(), 0.0);
    out.f = f(out.x, out.g);
    out.alpha = alpha;
    return dot(out.g, p);
  };

  double a_prev = 0.0;
  double f_prev = f0;
  double d_prev = d0;
  double alpha = 1.0;
  int evals = 0;

  auto zoom = [&](double lo, double f_lo, double d_lo, double hi, double f_hi, double d_hi) {
    LineSearchResult trial;
    while (evals < kMaxEvals) {
      const double a = interpolate(lo, f_lo, d_lo, hi, f_hi, d_hi);
      if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo))) break;
      const double da = eval(a, trial);
      ++evals;
      if (trial.f > f0 + kC1 * a * d0 || trial.f >= f_lo) {
        hi = a;
        f_hi = trial.f;
        d_hi = da;
      } else {
        if (std::abs(da) <= -kC2 * d0) {
          trial.ok = true;
          return trial;
        }
        if (da * (hi - lo) >= 0.0) {
          hi = lo;
          f_hi = f_lo;
          d_hi = d_lo;
        }
        lo = a;
        f_lo = trial.f;
        d_lo = da;
        // Keep the best sufficient-decrease point in case the budget ends.
        res = trial;
        res.ok = trial.f < f0;
      }
    }
    return res;
  };

  while (evals < kMaxEvals) {
    LineSearchResult trial;
    const double da = eval(alpha, trial);
    ++evals;
    if (trial.f > f0 + kC1 * alpha * d0 || (evals > 1 && trial.f >= f_prev)) {
      return zoom(a_prev, f_prev, d_prev, alpha, trial.f, da);
    }
    if (std::abs(da) <= -kC2 * d0) {
      trial.ok = true;
      return trial;
    }
    if (da >= 0.0) return zoom(alpha, trial.f, da, a_prev, f_prev, d_prev);
    res = trial;
    res.ok = trial.f < f0;
    a_prev = alpha;
    f_prev = trial.f;
    d_prev = da;
    alpha = std::min(2.0 * alpha, kMaxAlpha);
    if (a_prev >= kMaxAlpha) break;
  }
  return res;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* to_string(Algorithm a) { return a == Algorithm::Bfgs ? "bfgs" : "spsa"; }

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "bfgs") return Algorithm::Bfgs;
  if (s == "spsa") return Algorithm::Spsa;
  throw ArgumentError("algorithm must be 'bfgs' or 'spsa', got '" + s + "'");
}

OptimizerSettings OptimizerSettings::spsa_for(int n) {
  OptimizerSettings s;
  s.algorithm = Algorithm::Spsa;
  s.max_iterations = 100 * n;
  return s;
}

nlohmann::json to_json(const RunRecord& r) {
  return nlohmann::json{{"run_index", r.run_index},
                        {"seed", r.seed},
                        {"initial_params", r.initial_params},
                        {"final_params", r.final_params},
                        {"final_free_energy", r.final_free_energy},
                        {"evaluation_count", r.evaluation_count},
                        {"iteration_count", r.iteration_count},
                        {"calibration_evaluations", r.calibration_evaluations},
                        {"converged", r.converged},
                        {"failed", r.failed},
                        {"diagnostic", r.diagnostic},
                        {"wall_time", r.wall_time}};
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.run_index = j.at("run_index").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.initial_params = j.at("initial_params").get<std::vector<double>>();
  r.final_params = j.at("final_params").get<std::vector<double>>();
  r.final_free_energy = j.at("final_free_energy").get<double>();
  r.evaluation_count = j.at("evaluation_count").get<long long>();
  r.iteration_count = j.at("iteration_count").get<long long>();
  r.calibration_evaluations = j.value("calibration_evaluations", 0LL);
  r.converged = j.at("converged").get<bool>();
  r.failed = j.value("failed", false);
  r.diagnostic = j.value("diagnostic", std::string());
  r.wall_time = j.value("wall_time", 0.0);
  return r;
}

RunRecord bfgs_minimize(const GradientObjective& objective, std::vector<double> x0,
                        const OptimizerSettings& settings) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.initial_params = x0;
  const std::size_t dim = x0.size();
  CountingObjective f(objective);

  Vec x = std::move(x0);
  Vec g(dim, 0.0);
  // Row-major dense inverse-Hessian approximation.
  std::vector<double> hinv(dim * dim, 0.0);
  auto reset_hinv = [&](double scale) {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) hinv[i * dim + i] = scale;
  };
  reset_hinv(1.0);
  bool scaled = false;

  try {
    double fx = f(x, g);
    rec.final_free_energy = fx;
    if (settings.observer) settings.observer(0, fx);
    for (int iter = 0; iter < settings.max_iterations; ++iter) {
      if (norm_inf(g) < settings.gradient_tolerance) {
        rec.converged = true;
        break;
      }
      Vec p(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) s -= hinv[i * dim + j] * g[j];
        p[i] = s;
      }
      if (!(dot(p, g) < 0.0)) {
        reset_hinv(1.0);
        for (std::size_t i = 0; i < dim; ++i) p[i] = -g[i];
      }

      LineSearchResult ls = line_search(f, x, fx, g, p);
      if (!ls.ok) {
        // One steepest-descent retry with a fresh metric.
        reset_hinv(1.0);
        scaled = false;
        for (std::size_t i = 0; i < dim; ++i) p[i] = -g[i];
        ls = line_search(f, x, fx, g, p);
        if (!ls.ok) {
          rec.diagnostic = "line search failed along steepest descent";
          rec.iteration_count = iter;
          break;
        }
      }

      Vec s(dim), y(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        s[i] = ls.x[i] - x[i];
        y[i] = ls.g[i] - g[i];
      }
      x = std::move(ls.x);
      g = std::move(ls.g);
      fx = ls.f;
      rec.iteration_count = iter + 1;
      if (settings.observer) settings.observer(rec.iteration_count, fx);

      const double ys = dot(y, s);
      if (ys > 1e-14 * std::sqrt(dot(y, y) * dot(s, s))) {
        if (!scaled) {
          reset_hinv(ys / dot(y, y));
          scaled = true;
        }
        // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
        const double rho = 1.0 / ys;
        Vec hy(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) hy[i] += hinv[i * dim + j] * y[j];
        }
        const double yhy = dot(y, hy);
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            hinv[i * dim + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                                 (rho * rho * yhy + rho) * s[i] * s[j];
          }
        }
      }
      rec.final_free_energy = fx;
    }
    if (!rec.converged && norm_inf(g) < settings.gradient_tolerance) rec.converged = true;
  } catch (const NonFinite&) {
    rec.failed = true;
    rec.diagnostic = "objective returned a non-finite value or gradient";
  }

  rec.final_params = std::move(x);
  rec.evaluation_count = f.calls();
  rec.wall_time = seconds_since(t0);
  return rec;
}

double SpsaSchedule::step(long long k) const {
  return a / std::pow(static_cast<double>(k) + 1.0 + stability, alpha);
}

double SpsaSchedule::perturbation(long long k) const {
  return c / std::pow(static_cast<double>(k) + 1.0, gamma);
}

RunRecord spsa_minimize(const NoisyObjective& objective, std::vector<double> x0,
                        const OptimizerSettings& settings, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.seed = seed;
  rec.initial_params = x0;
  const std::size_t dim = x0.size();
  Vec x = std::move(x0);

  std::uint64_t stream = 0;
  auto eval = [&](const Vec& at) {
    ++rec.evaluation_count;
    return objective(at, stream_seed(seed, {0x5e55, stream++}));
  };

  std::mt19937_64 perturb_rng(stream_seed(seed, {0xde17a}));
  std::bernoulli_distribution coin(0.5);
  auto draw_delta = [&]() {
    Vec d(dim);
    for (auto& v : d) v = coin(perturb_rng) ? 1.0 : -1.0;
    return d;
  };
  auto shifted = [&](const Vec& base, const Vec& delta, double scale) {
    Vec out(base);
    for (std::size_t i = 0; i < dim; ++i) out[i] += scale * delta[i];
    return out;
  };

  const double alpha = settings.spsa_alpha;
  const double gamma = settings.spsa_gamma;
  const double big_a = settings.spsa_stability >= 0.0 ? settings.spsa_stability
                                                       : 0.1 * settings.max_iterations;
  double a = settings.spsa_a;
  double c = settings.spsa_c;

  // Calibration: a few repeated evaluations at x0 estimate the noise level
  // (-> c); the rest are +-c pairs whose mean |g| sets a so the first step
  // has magnitude spsa_target_step.
  const int budget = std::max(settings.spsa_calibration_evals, 0);
  if (budget > 0 && (a <= 0.0 || c <= 0.0)) {
    const int pairs = std::max(0, (budget - budget / 5) / 2);
    const int repeats = budget - 2 * pairs;
    if (c <= 0.0) {
      std::vector<double> vals;
      for (int r = 0; r < repeats; ++r) {
        const double v = eval(x);
        if (std::isfinite(v)) vals.push_back(v);
      }
      double sd = 0.0;
      if (vals.size() > 1) {
        double m = 0.0;
        for (double v : vals) m += v;
        m /= static_cast<double>(vals.size());
        for (double v : vals) sd += (v - m) * (v - m);
        sd = std::sqrt(sd / static_cast<double>(vals.size() - 1));
      }
      c = std::max(sd, settings.spsa_min_c);
    } else {
      for (int r = 0; r < repeats; ++r) eval(x);
    }
    double mag = 0.0;
    int used = 0;
    for (int r = 0; r < pairs; ++r) {
      const Vec delta = draw_delta();
      const double fp = eval(shifted(x, delta, c));
      const double fm = eval(shifted(x, delta, -c));
      if (std::isfinite(fp) && std::isfinite(fm)) {
        mag += std::abs(fp - fm) / (2.0 * c);
        ++used;
      }
    }
    if (a <= 0.0) {
      mag = used > 0 ? mag / used : 0.0;
      a = mag > 0.0 ? settings.spsa_target_step * std::pow(big_a + 1.0, alpha) / mag
                    : settings.spsa_target_step;
    }
    rec.calibration_evaluations = rec.evaluation_count;
  } else {
    if (c <= 0.0) c = settings.spsa_min_c;
    if (a <= 0.0) a = settings.spsa_target_step * std::pow(big_a + 1.0, alpha);
  }

  const SpsaSchedule gains{a, c, big_a, alpha, gamma};
  int skipped = 0;
  double last_value = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < settings.max_iterations; ++k) {
    const double ak = gains.step(k);
    const double ck = gains.perturbation(k);
    const Vec delta = draw_delta();
    const double fp = eval(shifted(x, delta, ck));
    const double fm = eval(shifted(x, delta, -ck));
    rec.iteration_count = k + 1;
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      ++skipped;
      continue;
    }
    const double scale = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < dim; ++i) x[i] -= ak * scale / delta[i];
    last_value = 0.5 * (fp + fm);
    if (settings.observer) settings.observer(k + 1, last_value);
  }
  if (skipped > 0) {
    rec.diagnostic = std::to_string(skipped) + " iteration(s) skipped on non-finite evaluations";
  }
  rec.final_free_energy = last_value;
  rec.failed = !std::isfinite(last_value);
  rec.final_params = std::move(x);
  rec.wall_time = seconds_since(t0);
  return rec;
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index) {
  return stream_seed(base_seed, {0x7275u, static_cast<std::uint64_t>(run_index)});
}

std::vector<double> initial_point(std::size_t dimension, std::uint64_t seed) {
  std::mt19937_64 rng(stream_seed(seed, {0x1417}));
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> x(dimension);
  for (auto& v : x) v = u(rng);
  return x;
}

int best_by_objective(std::span<const RunRecord> runs) {
  int best = -1;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunRecord& r = runs[i];
    if (r.failed || r.run_index < 0 || !std::isfinite(r.final_free_energy)) continue;
    if (best < 0 || r.final_free_energy < runs[static_cast<std::size_t>(best)].final_free_energy) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

MultistartResult multistart_subset(const Problem& problem, std::span<const int> run_indices,
                                   int num_runs, std::uint64_t base_seed,
                                   const OptimizerSettings& settings, int workers,
                                   const std::function<void(const RunRecord&)>& on_done) {
  if (num_runs < 1) throw ArgumentError("multistart needs at least one run");
  if (settings.algorithm == Algorithm::Bfgs && !problem.exact) {
    throw ArgumentError("BFGS needs an objective with gradient");
  }
  if (settings.algorithm == Algorithm::Spsa && !problem.noisy) {
    throw ArgumentError("SPSA needs a noisy objective");
  }
  MultistartResult result;
  result.runs.resize(static_cast<std::size_t>(num_runs));
  for (auto& r : result.runs) r.run_index = -1;

  std::mutex done_mutex;
  auto run_one = [&](int idx) {
    const std::uint64_t seed = run_seed(base_seed, idx);
    std::vector<double> x0 = initial_point(problem.dimension, seed);
    RunRecord rec;
    try {
      rec = settings.algorithm == Algorithm::Bfgs
                ? bfgs_minimize(problem.exact, std::move(x0), settings)
                : spsa_minimize(problem.noisy, std::move(x0), settings, seed);
    } catch (const std::exception& e) {
      rec.initial_params = initial_point(problem.dimension, seed);
      rec.final_params = rec.initial_params;
      rec.failed = true;
      rec.final_free_energy = std::numeric_limits<double>::quiet_NaN();
      rec.diagnostic = e.what();
    }
    rec.run_index = idx;
    rec.seed = seed;
    result.runs[static_cast<std::size_t>(idx)] = rec;
    if (on_done) {
      std::lock_guard<std::mutex> lock(done_mutex);
      on_done(rec);
    }
  };

  for (int idx : run_indices) {
    if (idx < 0 || idx >= num_runs) throw IndexError("run index out of range");
  }
  const int nthreads = std::clamp(workers, 1, std::max<int>(1, static_cast<int>(run_indices.size())));
  if (nthreads == 1) {
    for (int idx : run_indices) run_one(idx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < run_indices.size(); k = next++) run_one(run_indices[k]);
      });
    }
    for (auto& th : pool) th.join();
  }
  result.best_by_objective = best_by_objective(result.runs);
  return result;
}

MultistartResult multistart(const Problem& problem, int num_runs, std::uint64_t base_seed,
                            const OptimizerSettings& settings, int workers) {
  if (num_runs < 1) throw ArgumentError("multistart needs at least one run");
  std::vector<int> all(static_cast<std::size_t>(num_runs));
  for (int i = 0; i < num_runs; ++i) all[static_cast<std::size_t>(i)] = i;
  return multistart_subset(problem, all, num_runs, base_seed, settings, workers);
}

}  // namespace gibbsvqa
