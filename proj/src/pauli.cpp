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


#include "gibbsvqa/pauli.hpp"

#include <algorithm>
#include <sstream>

#include "gibbsvqa/errors.hpp"

namespace gibbsvqa {

char to_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return 'X';
    case PauliAxis::Y:
      return 'Y';
    case PauliAxis::Z:
      return 'Z';
  }
  return '?';
}

PauliAxis pauli_axis_from_char(char c) {
  switch (c) {
    case 'X':
    case 'x':
      return PauliAxis::X;
    case 'Y':
    case 'y':
      return PauliAxis::Y;
    case 'Z':
    case 'z':
      return PauliAxis::Z;
    default:
      throw ArgumentError(std::string("unknown Pauli axis '") + c + "'");
  }
}

PauliTerm::PauliTerm(double coefficient, std::vector<PauliFactor> factors)
    : coefficient_(coefficient), factors_(std::move(factors)) {
  std::vector<int> seen;
  seen.reserve(factors_.size());
  for (const auto& f : factors_) {
    if (f.qubit.index < 0) {
      throw IndexError("negative qubit index in Pauli term");
    }
    if (std::find(seen.begin(), seen.end(), f.qubit.index) != seen.end()) {
      throw ArgumentError("qubit " + std::to_string(f.qubit.index) +
                          " appears twice in Pauli term");
    }
    seen.push_back(f.qubit.index);
  }
}

int PauliTerm::span_qubits() const {
  int m = 0;
  for (const auto& f : factors_) m = std::max(m, f.qubit.index + 1);
  return m;
}

PauliTerm PauliTerm::shifted(int offset) const {
  std::vector<PauliFactor> moved = factors_;
  for (auto& f : moved) f.qubit = Qubit(f.qubit.index + offset);
  return PauliTerm(coefficient_, std::move(moved));
}

std::string PauliTerm::to_string() const {
  std::ostringstream os;
  os << coefficient_ << '*';
  if (factors_.empty()) os << 'I';
  for (const auto& f : factors_) os << to_char(f.axis) << f.qubit.index;
  return os.str();
}

}  // namespace gibbsvqa
