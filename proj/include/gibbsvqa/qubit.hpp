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

#include <compare>

namespace gibbsvqa {

/// Position of a qubit in a register. Qubit k is bit k (value 2^k) of a
/// basis-state index.
struct Qubit {
  int index = 0;

  constexpr Qubit() = default;
  constexpr explicit Qubit(int i) : index(i) {}

  friend constexpr auto operator<=>(Qubit, Qubit) = default;
};

}  // namespace gibbsvqa
