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

#ifndef QAPLAND_TESTS_TEST_UTIL_HPP_
#define QAPLAND_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "qapland/instance.hpp"
#include "qapland/permutation.hpp"
#include "qapland/qaplib.hpp"
#include "qapland/scalar.hpp"

namespace qapland::testing {

inline Rational Q(std::int64_t num, std::int64_t den = 1) {
  return ScalarTraits<Rational>::Ratio(num, den);
}

// Integer instance with entries in [0, 9].
inline QapInstance<Rational> SmallInstance(int n, std::uint64_t seed) {
  return GenerateInstance(n, seed, 0, 9);
}

inline QapInstance<Rational> ConstantInstance(int n, std::int64_t value) {
  SquareMatrix<Rational> r(n, Q(value)), w(n, Q(value));
  return QapInstance<Rational>(std::move(r), std::move(w));
}

inline std::vector<Permutation> AllPermutations(int n) {
  std::vector<Permutation> out;
  ForEachPermutation(n, [&](const Permutation& x) { out.push_back(x); });
  return out;
}

inline std::vector<Permutation> RandomPermutations(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Permutation> out;
  for (int k = 0; k < count; ++k) out.push_back(RandomPermutation(n, rng));
  return out;
}

// Uniformly random integer tensor with entries in [lo, hi].
inline GeneralTensor<Rational> RandomTensor(int n, std::uint64_t seed, int lo = -5, int hi = 5) {
  std::mt19937_64 rng(seed);
  GeneralTensor<Rational> t(n);
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          t(i, j, p, q) = Q(lo + static_cast<std::int64_t>(UniformBelow(rng, span)));
  return t;
}

// Literal mean of fn over the swap neighbors of x, by explicit swaps.
template <typename Fn>
Rational BruteNeighborMean(const Permutation& x, Fn&& fn) {
  Rational sum = 0;
  int count = 0;
  for (int u = 0; u < x.size(); ++u) {
    for (int v = u + 1; v < x.size(); ++v) {
      sum += fn(Swap(x, u, v));
      ++count;
    }
  }
  return sum / count;
}

}  // namespace qapland::testing

#endif  // QAPLAND_TESTS_TEST_UTIL_HPP_
