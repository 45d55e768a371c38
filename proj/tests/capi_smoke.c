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


#include <stdio.h>

#include "gibbsvqa/gibbsvqa.h"

int main(void) {
  gvqa_hamiltonian* h = NULL;
  gvqa_spectrum* s = NULL;
  double f = 0.0;
  if (gvqa_ising_create(2, 0.5, GVQA_PERIODIC, &h) != GVQA_OK) return 1;
  if (gvqa_spectrum_create(h, 0, &s) != GVQA_OK) return 1;
  if (gvqa_exact_free_energy(s, 1.0, &f) != GVQA_OK) return 1;
  printf("%s %.12f\n", gvqa_version(), f);
  gvqa_spectrum_destroy(s);
  gvqa_hamiltonian_destroy(h);
  return f < -2.0 && f > -2.1 ? 0 : 1;
}
