// Copyright 2026 The qapland Authors
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

#include "qapland/decomposition.hpp"

namespace qapland {

void CheckComponent(int m) {
  if (m < 1 || m > 3) {
    throw std::invalid_argument("component index must be 1, 2 or 3, got " +
                                std::to_string(m));
  }
}

std::int64_t CharacteristicConstant(int m, int n) {
  CheckComponent(m);
  switch (m) {
    case 1: return 2 * static_cast<std::int64_t>(n);
    case 2: return 2 * (static_cast<std::int64_t>(n) - 1);
    default: return n;
  }
}

OmegaCase ClassifyOmegaCase(int i, int j, int p, int q, const Permutation& x) {
  const int n = x.size();
  if (i < 0 || i >= n || j < 0 || j >= n || p < 0 || p >= n || q < 0 || q >= n) {
    throw std::out_of_range("Omega index out of range");
  }
  if (i == j) throw std::invalid_argument("Omega requires i != j");
  if (p == q) throw std::invalid_argument("Omega requires p != q");

  const int a = x[i];
  const int b = x[j];
  const bool alpha = a == p && b == q;
  const bool beta = a == q && b == p;
  const bool gamma = (a == p) != (b == q);
  const bool epsilon = (a == q) != (b == p);
  const bool zeta = a != p && a != q && b != p && b != q;

  const int fired = int{alpha} + int{beta} + int{gamma} + int{epsilon} + int{zeta};
  if (fired != 1) {
    throw std::logic_error("Omega case analysis: " + std::to_string(fired) +
                           " branches fired for x=" + x.ToString());
  }
  if (alpha) return OmegaCase::kAlpha;
  if (beta) return OmegaCase::kBeta;
  if (gamma) return OmegaCase::kGamma;
  if (epsilon) return OmegaCase::kEpsilon;
  return OmegaCase::kZeta;
}

}  // namespace qapland
