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

#include <string>
#include <vector>

#include "gibbsvqa/qubit.hpp"

namespace gibbsvqa {

enum class PauliAxis { X, Y, Z };

char to_char(PauliAxis axis);
PauliAxis pauli_axis_from_char(char c);

struct PauliFactor {
  Qubit qubit;
  PauliAxis axis;

  friend bool operator==(const PauliFactor&, const PauliFactor&) = default;
};

/// A real-weighted Pauli string, coefficient * (P_{q0} P_{q1} ...).
/// Construction rejects a qubit listed twice.
class PauliTerm {
 public:
  PauliTerm(double coefficient, std::vector<PauliFactor> factors);

  double coefficient() const { return coefficient_; }
  const std::vector<PauliFactor>& factors() const { return factors_; }

  /// Largest qubit index touched plus one (0 for the identity string).
  int span_qubits() const;

  /// Same string with every qubit index shifted by `offset`.
  PauliTerm shifted(int offset) const;

  /// e.g. "-1*X0X1" or "-0.5*Z2".
  std::string to_string() const;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;

 private:
  double coefficient_;
  std::vector<PauliFactor> factors_;
};

}  // namespace gibbsvqa
