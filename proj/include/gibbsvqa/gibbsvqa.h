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


#ifndef GIBBSVQA_H_
#define GIBBSVQA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GIBBSVQA_BUILDING)
#define GVQA_API __attribute__((visibility("default")))
#else
#define GVQA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gvqa_status {
  GVQA_OK = 0,
  GVQA_ERR_INDEX = 1,
  GVQA_ERR_ARGUMENT = 2,
  GVQA_ERR_INVALID_GATE = 3,
  GVQA_ERR_RESOURCE = 4,
  GVQA_ERR_NUMERIC = 5,
  GVQA_ERR_UNSUPPORTED = 6,
  GVQA_ERR_IO = 7,
  GVQA_ERR_INTERNAL = 8
} gvqa_status;

typedef enum gvqa_boundary { GVQA_PERIODIC = 0, GVQA_OPEN = 1 } gvqa_boundary;

typedef struct gvqa_hamiltonian gvqa_hamiltonian;
typedef struct gvqa_spectrum gvqa_spectrum;
typedef struct gvqa_ansatz gvqa_ansatz;

typedef struct gvqa_breakdown {
  double energy;
  double entropy;
  double beta;
  double free_energy;
  double energy_stderr;
  int circuits;
} gvqa_breakdown;

typedef struct gvqa_resources {
  int64_t num_parameters;
  int64_t num_cnot;
  int64_t num_sqrt_x;
  int64_t circuit_depth;
} gvqa_resources;

GVQA_API const char* gvqa_version(void);

/* Message of the last failing call on this thread ("" if none). */
GVQA_API const char* gvqa_last_error(void);

GVQA_API gvqa_status gvqa_ising_create(int n, double h, gvqa_boundary boundary,
                                       gvqa_hamiltonian** out);
GVQA_API void gvqa_hamiltonian_destroy(gvqa_hamiltonian* h);
GVQA_API int gvqa_hamiltonian_num_qubits(const gvqa_hamiltonian* h);

GVQA_API gvqa_status gvqa_spectrum_create(const gvqa_hamiltonian* h, int with_eigenvectors,
                                          gvqa_spectrum** out);
GVQA_API void gvqa_spectrum_destroy(gvqa_spectrum* s);
GVQA_API size_t gvqa_spectrum_dim(const gvqa_spectrum* s);
/* Copies the ascending energies; len must equal gvqa_spectrum_dim. */
GVQA_API gvqa_status gvqa_spectrum_energies(const gvqa_spectrum* s, double* out, size_t len);
GVQA_API gvqa_status gvqa_exact_free_energy(const gvqa_spectrum* s, double beta, double* out);

/* layers_system = 0 means n - 1. */
GVQA_API gvqa_status gvqa_ansatz_create(int n, int layers_ancilla, int layers_system,
                                        int drop_nonadjacent_rp, gvqa_ansatz** out);
GVQA_API void gvqa_ansatz_destroy(gvqa_ansatz* a);
GVQA_API size_t gvqa_ansatz_num_params(const gvqa_ansatz* a);
GVQA_API gvqa_status gvqa_ansatz_resources(const gvqa_ansatz* a, gvqa_resources* out);

/* params is the flat [theta..., phi...] vector of gvqa_ansatz_num_params entries. */
GVQA_API gvqa_status gvqa_evaluate_exact(const gvqa_ansatz* a, const double* params,
                                         size_t num_params, const gvqa_hamiltonian* h,
                                         double beta, gvqa_breakdown* out);
GVQA_API gvqa_status gvqa_evaluate_shots(const gvqa_ansatz* a, const double* params,
                                         size_t num_params, const gvqa_hamiltonian* h,
                                         double beta, uint64_t shots, int miller_madow,
                                         uint64_t seed, gvqa_breakdown* out);
GVQA_API gvqa_status gvqa_gradient_exact(const gvqa_ansatz* a, const double* params,
                                         size_t num_params, const gvqa_hamiltonian* h,
                                         double beta, double* grad, size_t grad_len);

/* 2n-qubit statevector; with tfd != 0 the system unitary is also applied to
 * the ancilla register. re/im must hold 4^n entries each. */
GVQA_API gvqa_status gvqa_prepare_state(const gvqa_ansatz* a, const double* params,
                                        size_t num_params, int tfd, double* re, double* im,
                                        size_t len);

/* Fidelity and trace distance between the prepared system state and the
 * Gibbs state of s at beta. Either output may be NULL. */
GVQA_API gvqa_status gvqa_gibbs_distance(const gvqa_ansatz* a, const double* params,
                                         size_t num_params, const gvqa_spectrum* s, double beta,
                                         double* fidelity, double* trace_distance);

/* JSON batch entry points. On GVQA_OK *result holds a JSON document to be
 * released with gvqa_free_string; otherwise *result is NULL. */
GVQA_API gvqa_status gvqa_run_sweep(const char* config_json, char** result);
GVQA_API gvqa_status gvqa_run_appendix_a(const char* config_json, char** result);
GVQA_API gvqa_status gvqa_run_appendix_b(const char* config_json, char** result);
GVQA_API gvqa_status gvqa_report_resources(const char* config_json, char** result);
GVQA_API gvqa_status gvqa_exact_gibbs(const char* config_json, char** result);
GVQA_API gvqa_status gvqa_tfd(const char* config_json, char** result);
GVQA_API void gvqa_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif /* GIBBSVQA_H_ */
