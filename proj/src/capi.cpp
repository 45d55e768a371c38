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


#include "gibbsvqa/gibbsvqa.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "gibbsvqa/errors.hpp"
#include "gibbsvqa/harness.hpp"
#include "gibbsvqa/metrics.hpp"

struct gvqa_hamiltonian {
  gibbsvqa::Hamiltonian value;
};

struct gvqa_spectrum {
  gibbsvqa::Spectrum value;
};

struct gvqa_ansatz {
  gibbsvqa::AnsatzConfig value;
};

namespace {

using namespace gibbsvqa;
using nlohmann::json;

thread_local std::string g_last_error;

gvqa_status fail(gvqa_status code, const char* msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
gvqa_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return GVQA_OK;
  } catch (const IndexError& e) {
    return fail(GVQA_ERR_INDEX, e.what());
  } catch (const InvalidGateError& e) {
    return fail(GVQA_ERR_INVALID_GATE, e.what());
  } catch (const ArgumentError& e) {
    return fail(GVQA_ERR_ARGUMENT, e.what());
  } catch (const ResourceError& e) {
    return fail(GVQA_ERR_RESOURCE, e.what());
  } catch (const NumericError& e) {
    return fail(GVQA_ERR_NUMERIC, e.what());
  } catch (const UnsupportedError& e) {
    return fail(GVQA_ERR_UNSUPPORTED, e.what());
  } catch (const IoError& e) {
    return fail(GVQA_ERR_IO, e.what());
  } catch (const json::exception& e) {
    return fail(GVQA_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GVQA_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(GVQA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GVQA_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
}

Boundary to_boundary(gvqa_boundary b) {
  switch (b) {
    case GVQA_PERIODIC:
      return Boundary::Periodic;
    case GVQA_OPEN:
      return Boundary::Open;
  }
  throw ArgumentError("unknown boundary code");
}

ParameterVector params_from(const gvqa_ansatz* a, const double* params, std::size_t len) {
  require(a, "ansatz");
  if (len > 0) require(params, "params");
  if (len != a->value.num_params()) {
    throw ArgumentError("expected " + std::to_string(a->value.num_params()) + " parameters, got " +
                        std::to_string(len));
  }
  return ParameterVector::from_flat(a->value, {params, len});
}

void fill(const FreeEnergyBreakdown& b, gvqa_breakdown* out) {
  out->energy = b.energy;
  out->entropy = b.entropy;
  out->beta = b.beta;
  out->free_energy = b.free_energy;
  out->energy_stderr = b.energy_stderr;
  out->circuits = b.circuits;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json parse_config(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("invalid JSON: ") + e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
gvqa_status json_call(const char* config, char** result, F&& body) {
  if (result == nullptr) return fail(GVQA_ERR_ARGUMENT, "result is null");
  *result = nullptr;
  return guarded([&] {
    const json out = body(parse_config(config));
    *result = dup_string(out.dump(2));
  });
}

json resource_json(const ResourceCount& r) {
  return {{"num_parameters", r.num_parameters},
          {"num_cnot", r.num_cnot},
          {"num_sqrt_x", r.num_sqrt_x},
          {"circuit_depth", r.circuit_depth}};
}

}  // namespace

extern "C" {

const char* gvqa_version(void) { return "0.1.0"; }

const char* gvqa_last_error(void) { return g_last_error.c_str(); }

gvqa_status gvqa_ising_create(int n, double h, gvqa_boundary boundary, gvqa_hamiltonian** out) {
  if (out == nullptr) return fail(GVQA_ERR_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] { *out = new gvqa_hamiltonian{build_ising(n, h, to_boundary(boundary))}; });
}

void gvqa_hamiltonian_destroy(gvqa_hamiltonian* h) { delete h; }

int gvqa_hamiltonian_num_qubits(const gvqa_hamiltonian* h) {
  return h == nullptr ? 0 : h->value.num_qubits();
}

gvqa_status gvqa_spectrum_create(const gvqa_hamiltonian* h, int with_eigenvectors,
                                 gvqa_spectrum** out) {
  if (out == nullptr) return fail(GVQA_ERR_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    require(h, "hamiltonian");
    DiagonalizeOptions opts;
    opts.eigenvectors = with_eigenvectors != 0;
    *out = new gvqa_spectrum{diagonalize(h->value, opts)};
  });
}

void gvqa_spectrum_destroy(gvqa_spectrum* s) { delete s; }

size_t gvqa_spectrum_dim(const gvqa_spectrum* s) {
  return s == nullptr ? 0 : static_cast<size_t>(s->value.dim());
}

gvqa_status gvqa_spectrum_energies(const gvqa_spectrum* s, double* out, size_t len) {
  return guarded([&] {
    require(s, "spectrum");
    require(out, "out");
    const auto e = s->value.energy_span();
    if (len != e.size()) throw ArgumentError("buffer length must equal the spectrum dimension");
    std::copy(e.begin(), e.end(), out);
  });
}

gvqa_status gvqa_exact_free_energy(const gvqa_spectrum* s, double beta, double* out) {
  return guarded([&] {
    require(s, "spectrum");
    require(out, "out");
    *out = exact_free_energy(s->value, beta);
  });
}

gvqa_status gvqa_ansatz_create(int n, int layers_ancilla, int layers_system,
                               int drop_nonadjacent_rp, gvqa_ansatz** out) {
  if (out == nullptr) return fail(GVQA_ERR_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    AnsatzConfig c;
    c.n = n;
    c.layers_ancilla = layers_ancilla;
    c.layers_system = layers_system == 0 ? std::max(n - 1, 1) : layers_system;
    c.drop_nonadjacent_rp = drop_nonadjacent_rp != 0;
    c.validate();
    *out = new gvqa_ansatz{c};
  });
}

void gvqa_ansatz_destroy(gvqa_ansatz* a) { delete a; }

size_t gvqa_ansatz_num_params(const gvqa_ansatz* a) {
  return a == nullptr ? 0 : a->value.num_params();
}

gvqa_status gvqa_ansatz_resources(const gvqa_ansatz* a, gvqa_resources* out) {
  return guarded([&] {
    require(a, "ansatz");
    require(out, "out");
    const ResourceCount r = count_resources(a->value);
    *out = {r.num_parameters, r.num_cnot, r.num_sqrt_x, r.circuit_depth};
  });
}

gvqa_status gvqa_evaluate_exact(const gvqa_ansatz* a, const double* params, size_t num_params,
                                const gvqa_hamiltonian* h, double beta, gvqa_breakdown* out) {
  return guarded([&] {
    require(h, "hamiltonian");
    require(out, "out");
    fill(evaluate_exact(a->value, params_from(a, params, num_params), h->value, beta), out);
  });
}

gvqa_status gvqa_evaluate_shots(const gvqa_ansatz* a, const double* params, size_t num_params,
                                const gvqa_hamiltonian* h, double beta, uint64_t shots,
                                int miller_madow, uint64_t seed, gvqa_breakdown* out) {
  return guarded([&] {
    require(h, "hamiltonian");
    require(out, "out");
    EvaluationMode mode = EvaluationMode::shots(shots);
    mode.miller_madow = miller_madow != 0;
    fill(evaluate_shots(a->value, params_from(a, params, num_params), h->value, beta, mode, seed),
         out);
  });
}

gvqa_status gvqa_gradient_exact(const gvqa_ansatz* a, const double* params, size_t num_params,
                                const gvqa_hamiltonian* h, double beta, double* grad,
                                size_t grad_len) {
  return guarded([&] {
    require(h, "hamiltonian");
    require(grad, "grad");
    const ParameterVector p = params_from(a, params, num_params);
    if (grad_len != num_params) throw ArgumentError("gradient buffer length mismatch");
    const std::vector<double> g = gradient_exact(a->value, p, h->value, beta);
    std::copy(g.begin(), g.end(), grad);
  });
}

gvqa_status gvqa_prepare_state(const gvqa_ansatz* a, const double* params, size_t num_params,
                               int tfd, double* re, double* im, size_t len) {
  return guarded([&] {
    require(re, "re");
    require(im, "im");
    const ParameterVector p = params_from(a, params, num_params);
    const std::size_t dim = std::size_t{1} << a->value.total_qubits();
    if (len != dim) throw ArgumentError("state buffers must hold 4^n amplitudes");
    const StateVector s =
        tfd != 0 ? prepare_tfd_state(a->value, p) : prepare_variational_state(a->value, p);
    const auto amps = s.amplitudes();
    for (std::size_t k = 0; k < dim; ++k) {
      re[k] = amps[k].real();
      im[k] = amps[k].imag();
    }
  });
}

gvqa_status gvqa_gibbs_distance(const gvqa_ansatz* a, const double* params, size_t num_params,
                                const gvqa_spectrum* s, double beta, double* fid,
                                double* trace_dist) {
  return guarded([&] {
    require(s, "spectrum");
    const ParameterVector p = params_from(a, params, num_params);
    if (s->value.num_qubits() != a->value.n) throw ArgumentError("spectrum size differs from ansatz");
    const StateVector state = prepare_variational_state(a->value, p);
    const DensityMatrix rho = partial_trace(state, qubit_range(a->value.n, a->value.n));
    const DensityMatrix gibbs = gibbs_state(s->value, beta);
    if (fid != nullptr) *fid = fidelity(rho, gibbs);
    if (trace_dist != nullptr) *trace_dist = trace_distance(rho, gibbs);
  });
}

gvqa_status gvqa_run_sweep(const char* config_json, char** result) {
  return json_call(config_json, result, [](const json& j) {
    const SweepResult r = run_sweep(ExperimentConfig::from_json(j));
    json points = json::array();
    for (const auto& pt : r.points) {
      json runs = json::array();
      for (const auto& s : pt.runs) {
        runs.push_back({{"run", s.record.run_index},
                        {"seed", s.record.seed},
                        {"final_free_energy", num(s.record.final_free_energy)},
                        {"exact_objective", num(s.exact_objective)},
                        {"fidelity", num(s.fidelity)},
                        {"trace_distance", num(s.trace_distance)},
                        {"relative_entropy", num(s.relative_entropy)},
                        {"evaluations", s.record.evaluation_count},
                        {"iterations", s.record.iteration_count},
                        {"converged", s.record.converged},
                        {"failed", s.record.failed}});
      }
      points.push_back({{"beta", pt.beta},
                        {"exact_free_energy", num(pt.exact_free_energy)},
                        {"best_fidelity", num(pt.best_fidelity)},
                        {"best_trace_distance", num(pt.best_trace_distance)},
                        {"best_relative_entropy", num(pt.best_relative_entropy)},
                        {"best_free_energy", num(pt.best_free_energy)},
                        {"best_by_objective", pt.best_by_objective},
                        {"best_by_fidelity", pt.best_by_fidelity},
                        {"runs", runs}});
    }
    return json{{"config", r.config.to_json()}, {"config_hash", r.config_hash}, {"points", points}};
  });
}

gvqa_status gvqa_run_appendix_a(const char* config_json, char** result) {
  return json_call(config_json, result, [](const json& j) {
    const AppendixAConfig cfg = AppendixAConfig::from_json(j);
    const AppendixAResult r = run_appendix_a(cfg);
    json rows = json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"n", row.n},
                      {"h", row.h},
                      {"boundary", to_string(row.boundary)},
                      {"beta", row.beta},
                      {"i", row.i},
                      {"c_v", num(row.c_v)},
                      {"shots", row.shots}});
    }
    json fits = json::array();
    for (const auto& f : r.fits) {
      fits.push_back({{"boundary", to_string(f.boundary)},
                      {"beta", f.beta},
                      {"state_index", f.fit.state_index},
                      {"exponent", num(f.fit.exponent)},
                      {"prefactor", num(f.fit.prefactor)},
                      {"r_squared", num(f.fit.r_squared)},
                      {"n_range", f.fit.n_values}});
    }
    return json{{"rows", rows}, {"fits", fits}};
  });
}

gvqa_status gvqa_run_appendix_b(const char* config_json, char** result) {
  return json_call(config_json, result, [](const json& j) {
    json rows = json::array();
    for (const auto& r : run_appendix_b(AppendixBConfig::from_json(j))) {
      rows.push_back({{"n", r.n},
                      {"h", r.h},
                      {"boundary", to_string(r.boundary)},
                      {"beta", r.beta},
                      {"constraint_gap", r.constraint_gap},
                      {"best_product_fidelity", r.best_product_fidelity},
                      {"entangled_fidelity", r.entangled_fidelity},
                      {"layers_ancilla", r.layers_ancilla}});
    }
    return json{{"rows", rows}};
  });
}

gvqa_status gvqa_report_resources(const char* config_json, char** result) {
  return json_call(config_json, result, [](const json& j) {
    std::vector<int> ns{3, 4, 5, 6};
    if (j.contains("n_values")) ns = j.at("n_values").get<std::vector<int>>();
    const int la = j.value("layers_ancilla", 1);
    const int ls = j.value("layers_system", 0);
    const auto rows = report_resources(ns, la, ls);
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"n", r.n},
                     {"layers_ancilla", r.layers_ancilla},
                     {"layers_system", r.layers_system},
                     {"counts", resource_json(r.counts)},
                     {"quoted", resource_json(r.quoted)},
                     {"at_defaults", resource_json(r.at_defaults)},
                     {"sqrt_x_discrepancy", r.sqrt_x_discrepancy}});
    }
    return json{{"rows", out}, {"csv", resources_csv(rows)}};
  });
}

gvqa_status gvqa_exact_gibbs(const char* config_json, char** result) {
  return json_call(config_json, result, [](const json& j) {
    const Boundary b = boundary_from_string(j.value("boundary", std::string("periodic")));
    return exact_gibbs_report(j.at("n").get<int>(), j.value("h", 0.5), b, j.value("beta", 1.0));
  });
}

gvqa_status gvqa_tfd(const char* config_json, char** result) {
  return json_call(config_json, result, [](const json& j) {
    return tfd_report(j.at("params").get<std::string>());
  });
}

void gvqa_free_string(char* s) { std::free(s); }

}  // extern "C"
