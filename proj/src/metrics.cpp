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


#include "gibbsvqa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/optimizer.hpp"

namespace gibbsvqa {

namespace {

constexpr double kEigenFloor = 1e-14;

void check_same_shape(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw ArgumentError("density matrices have different dimensions");
}

Eigen::SelfAdjointEigenSolver<CMatrix> hermitian_eig(const CMatrix& m) {
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver did not converge");
  return es;
}

CMatrix matrix_sqrt(const CMatrix& m) {
  const auto es = hermitian_eig(m);
  Eigen::VectorXd w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = w(i) > kEigenFloor ? std::sqrt(w(i)) : 0.0;
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - m);
  return m + std::log(acc);
}

// Sign-carrying amplitudes of the product state prod_j R_Y(theta_j)|0>.
std::vector<double> product_amplitudes(std::span<const double> angles) {
  const std::size_t n = angles.size();
  std::vector<double> amp(std::size_t{1} << n, 1.0);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      amp[i] *= ((i >> j) & 1u) ? std::sin(0.5 * angles[j]) : std::cos(0.5 * angles[j]);
    }
  }
  return amp;
}

}  // namespace

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  check_same_shape(rho1, rho2);
  const CMatrix s = matrix_sqrt(rho2.matrix());
  const auto es = hermitian_eig(s * rho1.matrix() * s);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > kEigenFloor) acc += std::sqrt(v);
  }
  return std::clamp(acc * acc, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  check_same_shape(rho1, rho2);
  const auto es = hermitian_eig(rho1.matrix() - rho2.matrix());
  return std::clamp(0.5 * es.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd w = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > kEigenFloor) s -= w(i) * std::log(w(i));
  }
  return s;
}

double relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  check_same_shape(rho1, rho2);
  const auto e2 = hermitian_eig(rho2.matrix());
  // Tr rho1 ln rho2 = sum_k ln(lambda_k) <v_k|rho1|v_k>.
  const CMatrix rotated = e2.eigenvectors().adjoint() * rho1.matrix() * e2.eigenvectors();
  double cross = 0.0;
  for (Eigen::Index k = 0; k < rotated.rows(); ++k) {
    const double weight = rotated(k, k).real();
    const double lambda = e2.eigenvalues()(k);
    if (lambda > kEigenFloor) {
      cross += weight * std::log(lambda);
    } else if (weight > 1e-12) {
      return std::numeric_limits<double>::infinity();
    }
  }
  const double value = -von_neumann_entropy(rho1) - cross;
  return std::max(value, 0.0);
}

double classical_fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ArgumentError("distributions have different lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::sqrt(std::max(p[i], 0.0) * std::max(q[i], 0.0));
  return acc * acc;
}

double cv_boltzmann(std::span<const double> energies, double beta, std::uint64_t shots, std::size_t i) {
  if (shots == 0) throw ArgumentError("shot count must be >= 1");
  if (i >= energies.size()) throw IndexError("state index out of range");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ArgumentError("beta must be finite and >= 0");
  // Z/e^{-beta E_i} - 1 = sum_{j != i} e^{-beta (E_j - E_i)}.
  std::vector<double> exponents;
  exponents.reserve(energies.size() - 1);
  for (std::size_t j = 0; j < energies.size(); ++j) {
    if (j != i) exponents.push_back(-beta * (energies[j] - energies[i]));
  }
  if (exponents.empty()) return 0.0;
  const double lse = log_sum_exp(exponents);
  return std::exp(0.5 * lse) / std::sqrt(static_cast<double>(shots));
}

double cv_boltzmann(const Spectrum& spectrum, double beta, std::uint64_t shots, std::size_t i) {
  return cv_boltzmann(spectrum.energy_span(), beta, shots, i);
}

FitResult fit_power_law(std::span<const int> n_values, std::span<const double> y) {
  if (n_values.size() < 3) throw ArgumentError("power-law fit needs at least 3 sizes");
  if (n_values.size() != y.size()) throw ArgumentError("fit inputs have different lengths");
  const auto m = static_cast<double>(n_values.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (n_values[k] < 1 || !(y[k] > 0.0) || !std::isfinite(y[k])) {
      throw NumericError("power-law fit needs positive finite data");
    }
    lx.push_back(std::log(static_cast<double>(n_values[k])));
    ly.push_back(std::log(y[k]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (sxx == 0.0) throw ArgumentError("power-law fit needs distinct sizes");
  FitResult r;
  r.exponent = sxy / sxx;
  r.prefactor = std::exp(my - r.exponent * mx);
  double ss_res = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double pred = my + r.exponent * (lx[k] - mx);
    ss_res += (ly[k] - pred) * (ly[k] - pred);
  }
  r.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  r.n_values.assign(n_values.begin(), n_values.end());
  return r;
}

FitResult fit_cv_exponent(double h, double beta, std::size_t i, std::span<const int> n_values,
                          std::uint64_t shots, Boundary boundary) {
  if (n_values.size() < 3) throw ArgumentError("power-law fit needs at least 3 sizes");
  std::vector<double> y;
  for (int n : n_values) {
    const Spectrum sp = diagonalize(build_ising(n, h, boundary), {.eigenvectors = false});
    if (i >= static_cast<std::size_t>(sp.dim())) throw IndexError("state index exceeds 2^n");
    y.push_back(cv_boltzmann(sp, beta, shots, i) * std::sqrt(static_cast<double>(shots)));
  }
  FitResult r = fit_power_law(n_values, y);
  r.state_index = i;
  return r;
}

double product_ansatz_constraint_gap(std::span<const double> energies) {
  if (energies.size() < 4) throw ArgumentError("constraint gap needs at least 4 levels (n >= 2)");
  std::vector<double> e(energies.begin(), energies.end());
  std::partial_sort(e.begin(), e.begin() + 4, e.end());
  return std::abs(e[0] + e[3] - e[1] - e[2]);
}

double product_ansatz_constraint_gap(const Spectrum& spectrum) {
  return product_ansatz_constraint_gap(spectrum.energy_span());
}

std::vector<double> product_distribution(std::span<const double> angles) {
  std::vector<double> q = product_amplitudes(angles);
  for (double& v : q) v *= v;
  return q;
}

double best_product_distribution_fidelity(const Spectrum& spectrum, double beta, int restarts,
                                          std::uint64_t seed) {
  const int n = spectrum.num_qubits();
  if (n > 6) throw ResourceError("product-distribution search is limited to n <= 6");
  const std::vector<double> p = boltzmann_probs(spectrum, beta);
  std::vector<double> sqrt_p(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) sqrt_p[i] = std::sqrt(p[i]);

  // Maximize (sum_i sqrt(p_i) a_i)^2 with a_i the signed product amplitudes.
  GradientObjective f = [&](std::span<const double> x, std::span<double> g) {
    const std::size_t m = x.size();
    const std::vector<double> amp = product_amplitudes(x);
    double overlap = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) overlap += sqrt_p[i] * amp[i];
    for (std::size_t j = 0; j < m; ++j) {
      const double c = std::cos(0.5 * x[j]);
      const double s = std::sin(0.5 * x[j]);
      double d = 0.0;
      for (std::size_t i = 0; i < amp.size(); ++i) {
        double other = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
          if (k == j) continue;
          other *= ((i >> k) & 1u) ? std::sin(0.5 * x[k]) : std::cos(0.5 * x[k]);
        }
        const double dj = ((i >> j) & 1u) ? 0.5 * c : -0.5 * s;
        d += sqrt_p[i] * other * dj;
      }
      g[j] = -2.0 * overlap * d;
    }
    return -overlap * overlap;
  };

  Problem problem{static_cast<std::size_t>(n), f, {}};
  OptimizerSettings settings;
  settings.gradient_tolerance = 1e-12;
  settings.max_iterations = 500;
  const MultistartResult ms = multistart(problem, std::max(restarts, 1), seed, settings);
  double best = 0.0;
  for (const auto& r : ms.runs) {
    if (r.failed) continue;
    best = std::max(best, classical_fidelity(p, product_distribution(r.final_params)));
  }
  return best;
}

double best_ancilla_distribution_fidelity(std::span<const double> target, int n, int layers,
                                          int restarts, std::uint64_t seed) {
  AnsatzConfig config;
  config.n = n;
  config.layers_ancilla = layers;
  config.validate();
  if (target.size() != (std::size_t{1} << n)) throw ArgumentError("target length must be 2^n");
  std::vector<double> sqrt_p(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) sqrt_p[i] = std::sqrt(std::max(target[i], 0.0));

  auto amplitudes = [&](std::span<const double> theta) {
    StateVector s(n);
    apply_ancilla_ansatz(s, config, theta);
    std::vector<double> a(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) a[i] = s[i].real();
    return a;
  };
  // Maximize (sum_i sqrt(p_i) |a_i|)^2 with |a| smoothed to sqrt(a^2 + eps).
  // Amplitudes are a cos(t/2) + b sin(t/2) in each angle, so
  // d amp / d theta_k = amp(theta_k + pi) / 2.
  constexpr double eps = 1e-14;
  GradientObjective f = [&](std::span<const double> x, std::span<double> g) {
    const std::vector<double> a = amplitudes(x);
    std::vector<double> mag(a.size());
    double overlap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      mag[i] = std::sqrt(a[i] * a[i] + eps);
      overlap += sqrt_p[i] * mag[i];
    }
    std::vector<double> shifted(x.begin(), x.end());
    for (std::size_t k = 0; k < x.size(); ++k) {
      shifted[k] = x[k] + std::numbers::pi;
      const std::vector<double> da = amplitudes(shifted);
      shifted[k] = x[k];
      double d = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) d += sqrt_p[i] * 0.5 * da[i] * a[i] / mag[i];
      g[k] = -2.0 * overlap * d;
    }
    return -overlap * overlap;
  };

  Problem problem{config.num_theta(), f, {}};
  OptimizerSettings settings;
  settings.gradient_tolerance = 1e-12;
  settings.max_iterations = 1000;
  const MultistartResult ms = multistart(problem, std::max(restarts, 1), seed, settings);
  double best = 0.0;
  for (const auto& r : ms.runs) {
    if (r.final_params.empty()) continue;
    StateVector s(n);
    apply_ancilla_ansatz(s, config, r.final_params);
    best = std::max(best, classical_fidelity(target, s.probabilities()));
  }
  return best;
}

CMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(int num_qubits, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  std::normal_distribution<double> g(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  CMatrix rho = CMatrix::Zero(d, d);
  std::vector<double> w(static_cast<std::size_t>(d));
  double total = 0.0;
  for (auto& v : w) {
    v = e(rng);
    total += v;
  }
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::VectorXcd psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = Complex(g(rng), g(rng));
    psi.normalize();
    rho += (w[static_cast<std::size_t>(k)] / total) * (psi * psi.adjoint());
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(num_qubits, std::move(rho));
}

}  // namespace gibbsvqa
